//! Bound tightening from row activities.

use crate::model::{MipModel, Sense, VarKind};

/// Rows in range form with a variable-to-row index.
#[derive(Debug, Clone)]
pub struct RowSet {
    pub rows: Vec<Row>,
    pub var_rows: Vec<Vec<usize>>,
    pub integer: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub lo: f64,
    pub hi: f64,
}

impl RowSet {
    pub fn from_model(model: &MipModel) -> Self {
        let mut var_rows = vec![Vec::new(); model.vars.len()];
        let rows: Vec<Row> = model
            .constraints
            .iter()
            .enumerate()
            .map(|(r, c)| {
                for &(j, a) in &c.coeffs {
                    if a != 0.0 {
                        var_rows[j].push(r);
                    }
                }
                let (lo, hi) = match c.sense {
                    Sense::Le => (f64::NEG_INFINITY, c.rhs),
                    Sense::Ge => (c.rhs, f64::INFINITY),
                    Sense::Eq => (c.rhs, c.rhs),
                };
                Row { coeffs: c.coeffs.iter().copied().filter(|e| e.1 != 0.0).collect(), lo, hi }
            })
            .collect();
        for v in &mut var_rows {
            v.dedup();
        }
        let integer = model.vars.iter().map(|v| v.kind == VarKind::Integer).collect();
        RowSet { rows, var_rows, integer }
    }
}

const ROW_TOL: f64 = 1e-7;

/// Minimum and maximum activity with counts of infinite contributions.
fn activity_bounds(row: &Row, lo: &[f64], hi: &[f64]) -> (f64, usize, f64, usize) {
    let (mut amin, mut nmin, mut amax, mut nmax) = (0.0, 0usize, 0.0, 0usize);
    for &(j, a) in &row.coeffs {
        let (l, h) = if a > 0.0 { (lo[j], hi[j]) } else { (hi[j], lo[j]) };
        let cmin = a * l;
        let cmax = a * h;
        if cmin.is_finite() {
            amin += cmin;
        } else {
            nmin += 1;
        }
        if cmax.is_finite() {
            amax += cmax;
        } else {
            nmax += 1;
        }
    }
    (amin, nmin, amax, nmax)
}

/// Tightens `lo`/`hi` to a fixpoint (or until the work budget runs out).
/// Returns `false` when the bounds prove the rows infeasible. When `seed`
/// is given only rows touching those variables are examined first.
pub fn propagate(rs: &RowSet, lo: &mut [f64], hi: &mut [f64], seed: Option<&[usize]>) -> bool {
    let nrows = rs.rows.len();
    let mut queued = vec![false; nrows];
    let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
    match seed {
        Some(vars) => {
            for &j in vars {
                for &r in &rs.var_rows[j] {
                    if !queued[r] {
                        queued[r] = true;
                        queue.push_back(r);
                    }
                }
            }
        }
        None => {
            queue.extend(0..nrows);
            queued.iter_mut().for_each(|q| *q = true);
        }
    }
    for j in 0..lo.len() {
        if rs.integer[j] {
            lo[j] = (lo[j] - 1e-6).ceil();
            hi[j] = (hi[j] + 1e-6).floor();
        }
        if lo[j] > hi[j] + 1e-9 {
            return false;
        }
    }
    let mut budget = 30 * nrows + 1000;
    while let Some(r) = queue.pop_front() {
        queued[r] = false;
        if budget == 0 {
            break;
        }
        budget -= 1;
        let row = &rs.rows[r];
        let (amin, nmin, amax, nmax) = activity_bounds(row, lo, hi);
        if nmin == 0 && amin > row.hi + ROW_TOL * (1.0 + row.hi.abs()) {
            return false;
        }
        if nmax == 0 && amax < row.lo - ROW_TOL * (1.0 + row.lo.abs()) {
            return false;
        }
        for &(j, a) in &row.coeffs {
            let (l, h) = if a > 0.0 { (lo[j], hi[j]) } else { (hi[j], lo[j]) };
            let cmin = a * l;
            let cmax = a * h;
            // residual minimum activity of the other terms
            let rest_min = if nmin == 0 {
                Some(amin - cmin)
            } else if nmin == 1 && !cmin.is_finite() {
                Some(amin)
            } else {
                None
            };
            let rest_max = if nmax == 0 {
                Some(amax - cmax)
            } else if nmax == 1 && !cmax.is_finite() {
                Some(amax)
            } else {
                None
            };
            let mut new_lo = lo[j];
            let mut new_hi = hi[j];
            if let (Some(rm), true) = (rest_min, row.hi.is_finite()) {
                let lim = (row.hi - rm) / a;
                if a > 0.0 {
                    new_hi = new_hi.min(lim);
                } else {
                    new_lo = new_lo.max(lim);
                }
            }
            if let (Some(rm), true) = (rest_max, row.lo.is_finite()) {
                let lim = (row.lo - rm) / a;
                if a > 0.0 {
                    new_lo = new_lo.max(lim);
                } else {
                    new_hi = new_hi.min(lim);
                }
            }
            let mut changed = false;
            if rs.integer[j] {
                let nl = (new_lo - 1e-6).ceil();
                let nh = (new_hi + 1e-6).floor();
                if nl > lo[j] {
                    lo[j] = nl;
                    changed = true;
                }
                if nh < hi[j] {
                    hi[j] = nh;
                    changed = true;
                }
            } else {
                let slack = 1e-9 * (1.0 + new_lo.abs().max(new_hi.abs()).min(1e12));
                let nl = new_lo - slack;
                let nh = new_hi + slack;
                let scale = 1.0 + lo[j].abs().min(hi[j].abs()).min(1e12);
                if nl > lo[j] + 1e-6 * scale || (!lo[j].is_finite() && nl.is_finite()) {
                    lo[j] = nl;
                    changed = true;
                }
                if nh < hi[j] - 1e-6 * scale || (!hi[j].is_finite() && nh.is_finite()) {
                    hi[j] = nh;
                    changed = true;
                }
            }
            if lo[j] > hi[j] + 1e-9 {
                return false;
            }
            if lo[j] > hi[j] {
                let mid = 0.5 * (lo[j] + hi[j]);
                lo[j] = mid;
                hi[j] = mid;
            }
            if changed {
                for &r2 in &rs.var_rows[j] {
                    if r2 != r && !queued[r2] {
                        queued[r2] = true;
                        queue.push_back(r2);
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{MipModel, Sense, VarKind};

    #[test]
    fn tightens_and_detects_infeasibility() {
        let mut m = MipModel::default();
        let x = m.add_var("x", VarKind::Integer, 0.0, 10.0);
        let y = m.add_var("y", VarKind::Integer, 0.0, 10.0);
        m.add_row("a", vec![(x, 2.0), (y, 1.0)], Sense::Le, 5.0);
        m.add_row("b", vec![(y, 1.0)], Sense::Ge, 2.0);
        let rs = RowSet::from_model(&m);
        let mut lo = vec![0.0, 0.0];
        let mut hi = vec![10.0, 10.0];
        assert!(propagate(&rs, &mut lo, &mut hi, None));
        assert_eq!((lo[1], hi[1]), (2.0, 5.0));
        assert_eq!(hi[0], 1.0);
        m.add_row("c", vec![(x, 1.0)], Sense::Ge, 2.0);
        let rs = RowSet::from_model(&m);
        let mut lo = vec![0.0, 0.0];
        let mut hi = vec![10.0, 10.0];
        assert!(!propagate(&rs, &mut lo, &mut hi, None));
    }

    #[test]
    fn free_variable_gets_bounds_from_equality() {
        let mut m = MipModel::default();
        let g = m.add_var("g", VarKind::Continuous, f64::NEG_INFINITY, f64::INFINITY);
        let a = m.add_var("a", VarKind::Integer, 0.0, 0.0);
        m.add_row("lo", vec![(a, 1.0), (g, 1.0)], Sense::Ge, 1.5);
        m.add_row("hi", vec![(a, 1.0), (g, 1.0)], Sense::Le, 2.5);
        let rs = RowSet::from_model(&m);
        let mut lo = vec![f64::NEG_INFINITY, 0.0];
        let mut hi = vec![f64::INFINITY, 0.0];
        assert!(propagate(&rs, &mut lo, &mut hi, None));
        assert!((lo[0] - 1.5).abs() < 1e-6 && (hi[0] - 2.5).abs() < 1e-6);
        assert!(lo[0] <= 1.5 && hi[0] >= 2.5);
    }
}
