//! Bounded-variable revised simplex with a dense basis inverse.
//!
//! Rows are turned into equalities with one slack per row: `A x - s = 0`,
//! where `s_i` carries the row's range as its bounds. The basis inverse is
//! kept explicitly and updated per pivot; it is rebuilt from scratch every
//! [`REFACTOR_EVERY`] pivots or when the residual grows.
//!
//! The driver picks the method from the current basis: primal simplex when
//! it is primal feasible, dual simplex when it is dual feasible (boxed
//! variables are flipped to the side their reduced cost wants), and a
//! composite phase 1 otherwise. After bound changes the previous basis stays
//! dual feasible, so branch-and-bound re-solves are warm dual simplex runs.

use std::time::Instant;

const REFACTOR_EVERY: usize = 100;
const PIVOT_TOL: f64 = 1e-9;
const DUAL_TOL: f64 = 1e-9;
const STALL_LIMIT: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    TimeLimit,
}

/// `min c·x` subject to `row_lo ≤ A x ≤ row_hi`, `col_lo ≤ x ≤ col_hi`.
#[derive(Debug, Clone, Default)]
pub struct LpProblem {
    pub cols: Vec<Vec<(usize, f64)>>,
    pub obj: Vec<f64>,
    pub col_lo: Vec<f64>,
    pub col_hi: Vec<f64>,
    pub row_lo: Vec<f64>,
    pub row_hi: Vec<f64>,
}

impl LpProblem {
    pub fn num_rows(&self) -> usize {
        self.row_lo.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Primal,
    Dual,
    Phase1,
}

#[derive(Debug, Clone)]
pub struct Simplex {
    n: usize,
    m: usize,
    cols: Vec<Vec<(usize, f64)>>,
    cost: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    x: Vec<f64>,
    head: Vec<usize>,
    /// Basis position of each column, or `usize::MAX` when nonbasic.
    pos: Vec<usize>,
    binv: Vec<f64>,
    d: Vec<f64>,
    since_refactor: usize,
    pub feas_tol: f64,
    pub max_iters: usize,
    pub iterations: usize,
}

impl Simplex {
    /// Starts from the all-slack basis.
    pub fn new(p: &LpProblem) -> Self {
        let n = p.num_cols();
        let m = p.num_rows();
        let mut lo = p.col_lo.clone();
        let mut hi = p.col_hi.clone();
        lo.extend_from_slice(&p.row_lo);
        hi.extend_from_slice(&p.row_hi);
        let mut cost = p.obj.clone();
        cost.resize(n + m, 0.0);
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            binv[i * m + i] = -1.0;
        }
        let mut pos = vec![usize::MAX; n + m];
        for i in 0..m {
            pos[n + i] = i;
        }
        let mut s = Simplex {
            n,
            m,
            cols: p.cols.clone(),
            cost,
            lo,
            hi,
            x: vec![0.0; n + m],
            head: (n..n + m).collect(),
            pos,
            binv,
            d: vec![0.0; n + m],
            since_refactor: 0,
            feas_tol: 1e-7,
            max_iters: 50_000 + 20 * (n + m),
            iterations: 0,
        };
        for j in 0..n {
            s.x[j] = s.default_value(j);
        }
        s.compute_xb();
        s
    }

    pub fn num_cols(&self) -> usize {
        self.n
    }

    pub fn num_rows(&self) -> usize {
        self.m
    }

    pub fn col_bounds(&self, j: usize) -> (f64, f64) {
        (self.lo[j], self.hi[j])
    }

    /// Structural values.
    pub fn primal(&self) -> Vec<f64> {
        self.x[..self.n].to_vec()
    }

    pub fn value(&self, j: usize) -> f64 {
        self.x[j]
    }

    pub fn objective(&self) -> f64 {
        (0..self.n).map(|j| self.cost[j] * self.x[j]).sum()
    }

    /// Reduced costs of the structurals (zero for basic columns).
    pub fn reduced_costs(&self) -> &[f64] {
        &self.d[..self.n]
    }

    pub fn is_basic(&self, j: usize) -> bool {
        self.pos[j] != usize::MAX
    }

    fn default_value(&self, j: usize) -> f64 {
        let (l, h) = (self.lo[j], self.hi[j]);
        if l.is_finite() && (self.cost[j] >= 0.0 || !h.is_finite()) {
            l
        } else if h.is_finite() {
            h
        } else {
            0.0
        }
    }

    /// Changes the bounds of structural `j`, keeping the basis.
    pub fn set_col_bounds(&mut self, j: usize, lo: f64, hi: f64) {
        if self.lo[j] == lo && self.hi[j] == hi {
            return;
        }
        let was_at_upper = !self.is_basic(j) && self.x[j] == self.hi[j] && self.x[j] != self.lo[j];
        self.lo[j] = lo;
        self.hi[j] = hi;
        if !self.is_basic(j) {
            let old = self.x[j];
            let new = if was_at_upper && hi.is_finite() {
                hi
            } else if lo.is_finite() {
                lo
            } else if hi.is_finite() {
                hi
            } else {
                0.0
            };
            if new != old {
                self.x[j] = new;
                self.shift_basics(j, new - old);
            }
        }
    }

    /// Sets the bounds of every structural at once, recomputing basic values
    /// a single time.
    pub fn set_all_col_bounds(&mut self, lo: &[f64], hi: &[f64]) {
        let mut moved = false;
        for j in 0..self.n {
            if self.lo[j] == lo[j] && self.hi[j] == hi[j] {
                continue;
            }
            let was_at_upper = !self.is_basic(j) && self.x[j] == self.hi[j] && self.x[j] != self.lo[j];
            self.lo[j] = lo[j];
            self.hi[j] = hi[j];
            if !self.is_basic(j) {
                let new = if was_at_upper && hi[j].is_finite() {
                    hi[j]
                } else if lo[j].is_finite() {
                    lo[j]
                } else if hi[j].is_finite() {
                    hi[j]
                } else {
                    0.0
                };
                if new != self.x[j] {
                    self.x[j] = new;
                    moved = true;
                }
            }
        }
        if moved {
            self.compute_xb();
        }
    }

    /// Updates basic values after nonbasic `j` moved by `delta`.
    fn shift_basics(&mut self, j: usize, delta: f64) {
        let alpha = self.ftran(j);
        for (i, a) in alpha.iter().enumerate() {
            if *a != 0.0 {
                let b = self.head[i];
                self.x[b] -= a * delta;
            }
        }
    }

    fn col_dot(&self, j: usize, v: &[f64]) -> f64 {
        if j < self.n {
            self.cols[j].iter().map(|&(i, a)| a * v[i]).sum()
        } else {
            -v[j - self.n]
        }
    }

    /// `B⁻¹ a_j`.
    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut out = vec![0.0; m];
        if j < self.n {
            for &(k, a) in &self.cols[j] {
                for (i, o) in out.iter_mut().enumerate() {
                    *o += self.binv[i * m + k] * a;
                }
            }
        } else {
            let k = j - self.n;
            for (i, o) in out.iter_mut().enumerate() {
                *o = -self.binv[i * m + k];
            }
        }
        out
    }

    fn compute_xb(&mut self) {
        let m = self.m;
        let mut w = vec![0.0; m];
        for j in 0..self.n + m {
            if self.is_basic(j) || self.x[j] == 0.0 {
                continue;
            }
            let v = self.x[j];
            if j < self.n {
                for &(i, a) in &self.cols[j] {
                    w[i] += a * v;
                }
            } else {
                w[j - self.n] -= v;
            }
        }
        for p in 0..m {
            let row = &self.binv[p * m..(p + 1) * m];
            let s: f64 = row.iter().zip(&w).map(|(b, w)| b * w).sum();
            let b = self.head[p];
            self.x[b] = -s;
        }
    }

    fn compute_duals(&mut self, cost: &[f64]) {
        let m = self.m;
        let mut y = vec![0.0; m];
        for p in 0..m {
            let c = cost[self.head[p]];
            if c != 0.0 {
                let row = &self.binv[p * m..(p + 1) * m];
                for (yk, b) in y.iter_mut().zip(row) {
                    *yk += c * b;
                }
            }
        }
        for j in 0..self.n + m {
            self.d[j] = if self.is_basic(j) { 0.0 } else { cost[j] - self.col_dot(j, &y) };
        }
    }

    fn residual(&self) -> f64 {
        let m = self.m;
        let mut r = vec![0.0; m];
        for j in 0..self.n {
            let v = self.x[j];
            if v != 0.0 {
                for &(i, a) in &self.cols[j] {
                    r[i] += a * v;
                }
            }
        }
        for i in 0..m {
            r[i] -= self.x[self.n + i];
        }
        r.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    fn pivot(&mut self, r: usize, q: usize, alpha: &[f64]) {
        let m = self.m;
        let piv = alpha[r];
        let leaving = self.head[r];
        {
            let row = &mut self.binv[r * m..(r + 1) * m];
            for v in row.iter_mut() {
                *v /= piv;
            }
        }
        let pivot_row: Vec<f64> = self.binv[r * m..(r + 1) * m].to_vec();
        for (i, &a) in alpha.iter().enumerate() {
            if i != r && a != 0.0 {
                let row = &mut self.binv[i * m..(i + 1) * m];
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= a * p;
                }
            }
        }
        self.head[r] = q;
        self.pos[q] = r;
        self.pos[leaving] = usize::MAX;
        self.since_refactor += 1;
        self.iterations += 1;
    }

    /// Rebuilds `B⁻¹` from the basis columns by Gauss-Jordan elimination.
    /// Columns that turn out dependent are swapped for slacks.
    pub fn refactor(&mut self) {
        let m = self.m;
        for _attempt in 0..4 {
            let mut mat = vec![0.0; m * m];
            for (p, &j) in self.head.iter().enumerate() {
                if j < self.n {
                    for &(i, a) in &self.cols[j] {
                        mat[i * m + p] = a;
                    }
                } else {
                    mat[(j - self.n) * m + p] = -1.0;
                }
            }
            let mut e = vec![0.0; m * m];
            for i in 0..m {
                e[i * m + i] = 1.0;
            }
            let mut row_of = vec![usize::MAX; m];
            let mut used = vec![false; m];
            let mut failed = Vec::new();
            for p in 0..m {
                let mut best = usize::MAX;
                let mut bv = 1e-11;
                for i in 0..m {
                    if !used[i] && mat[i * m + p].abs() > bv {
                        bv = mat[i * m + p].abs();
                        best = i;
                    }
                }
                if best == usize::MAX {
                    failed.push(p);
                    continue;
                }
                used[best] = true;
                row_of[p] = best;
                let inv = 1.0 / mat[best * m + p];
                for c in 0..m {
                    mat[best * m + c] *= inv;
                    e[best * m + c] *= inv;
                }
                let prow: Vec<f64> = mat[best * m..(best + 1) * m].to_vec();
                let perow: Vec<f64> = e[best * m..(best + 1) * m].to_vec();
                for i in 0..m {
                    if i == best {
                        continue;
                    }
                    let f = mat[i * m + p];
                    if f != 0.0 {
                        for c in 0..m {
                            mat[i * m + c] -= f * prow[c];
                            e[i * m + c] -= f * perow[c];
                        }
                    }
                }
            }
            if failed.is_empty() {
                let old = self.head.clone();
                for (p, &j) in old.iter().enumerate() {
                    self.head[row_of[p]] = j;
                    self.pos[j] = row_of[p];
                }
                self.binv = e;
                self.since_refactor = 0;
                self.compute_xb();
                return;
            }
            let free_rows: Vec<usize> = (0..m).filter(|&i| !used[i]).collect();
            for (&p, &i) in failed.iter().zip(&free_rows) {
                let j = self.head[p];
                self.pos[j] = usize::MAX;
                let v = self.x[j];
                self.x[j] = if v <= self.lo[j] || !self.hi[j].is_finite() {
                    if self.lo[j].is_finite() { self.lo[j] } else { 0.0 }
                } else if v >= self.hi[j] {
                    self.hi[j]
                } else if self.lo[j].is_finite() && (v - self.lo[j] <= self.hi[j] - v) {
                    self.lo[j]
                } else {
                    self.hi[j]
                };
                let s = self.n + i;
                if self.is_basic(s) {
                    continue;
                }
                self.head[p] = s;
                self.pos[s] = p;
            }
        }
        // Fall back to the slack basis.
        for j in 0..self.n {
            if self.is_basic(j) {
                self.pos[j] = usize::MAX;
                self.x[j] = self.default_value(j);
            }
        }
        self.head = (self.n..self.n + m).collect();
        for i in 0..m {
            self.pos[self.n + i] = i;
        }
        self.binv = vec![0.0; m * m];
        for i in 0..m {
            self.binv[i * m + i] = -1.0;
        }
        self.since_refactor = 0;
        self.compute_xb();
    }

    fn infeasibility(&self, j: usize) -> f64 {
        let v = self.x[j];
        if v < self.lo[j] - self.feas_tol {
            self.lo[j] - v
        } else if v > self.hi[j] + self.feas_tol {
            v - self.hi[j]
        } else {
            0.0
        }
    }

    fn primal_feasible(&self) -> bool {
        self.head.iter().all(|&j| self.infeasibility(j) == 0.0)
    }

    fn at_lower(&self, j: usize) -> bool {
        self.x[j] == self.lo[j]
    }

    fn at_upper(&self, j: usize) -> bool {
        self.x[j] == self.hi[j]
    }

    /// Direction in which nonbasic `j` may move: +1 up, -1 down, 0 both.
    fn can_move(&self, j: usize) -> (bool, bool) {
        if self.lo[j] == self.hi[j] {
            return (false, false);
        }
        (!self.at_upper(j), !self.at_lower(j))
    }

    fn dual_infeasible(&self, j: usize) -> bool {
        if self.is_basic(j) {
            return false;
        }
        let (up, down) = self.can_move(j);
        (up && self.d[j] < -DUAL_TOL) || (down && self.d[j] > DUAL_TOL)
    }

    /// Moves boxed nonbasic columns to the bound their reduced cost prefers.
    /// Returns whether the basis is then dual feasible.
    fn flip_to_dual_feasible(&mut self) -> bool {
        let mut ok = true;
        let mut moved = false;
        for j in 0..self.n + self.m {
            if !self.dual_infeasible(j) {
                continue;
            }
            if self.lo[j].is_finite() && self.hi[j].is_finite() {
                self.x[j] = if self.d[j] < 0.0 { self.hi[j] } else { self.lo[j] };
                moved = true;
            } else {
                ok = false;
            }
        }
        if moved {
            self.compute_xb();
        }
        ok
    }

    pub fn solve(&mut self, deadline: Option<Instant>) -> LpStatus {
        let start_iters = self.iterations;
        let mut stall = 0usize;
        let mut last_obj = f64::INFINITY;
        let mut last_mode = Mode::Primal;
        loop {
            if self.iterations - start_iters > self.max_iters {
                return LpStatus::IterationLimit;
            }
            if self.iterations.is_multiple_of(16) {
                if let Some(dl) = deadline {
                    if Instant::now() >= dl {
                        return LpStatus::TimeLimit;
                    }
                }
            }
            if self.since_refactor >= REFACTOR_EVERY || (self.since_refactor > 0 && self.residual() > 1e-9) {
                self.refactor();
            }
            let cost = self.cost.clone();
            self.compute_duals(&cost);
            let mode = if self.primal_feasible() {
                if (0..self.n + self.m).all(|j| !self.dual_infeasible(j)) {
                    if self.since_refactor > 0 {
                        self.refactor();
                        self.compute_duals(&cost);
                        if !self.primal_feasible() || (0..self.n + self.m).any(|j| self.dual_infeasible(j)) {
                            continue;
                        }
                    }
                    return LpStatus::Optimal;
                }
                Mode::Primal
            } else if self.flip_to_dual_feasible() {
                if self.primal_feasible() {
                    continue;
                }
                Mode::Dual
            } else {
                Mode::Phase1
            };
            let progress_measure = match mode {
                Mode::Primal => self.objective(),
                Mode::Dual => -self.objective(),
                Mode::Phase1 => self.head.iter().map(|&j| self.infeasibility(j)).sum(),
            };
            if mode == last_mode && progress_measure >= last_obj - 1e-12 {
                stall += 1;
            } else {
                stall = 0;
            }
            last_obj = progress_measure;
            last_mode = mode;
            let bland = stall > STALL_LIMIT;
            let res = match mode {
                Mode::Primal => self.primal_iter(bland, false),
                Mode::Dual => self.dual_iter(bland),
                Mode::Phase1 => {
                    let c1: Vec<f64> = (0..self.n + self.m)
                        .map(|j| {
                            if !self.is_basic(j) {
                                0.0
                            } else if self.x[j] < self.lo[j] - self.feas_tol {
                                -1.0
                            } else if self.x[j] > self.hi[j] + self.feas_tol {
                                1.0
                            } else {
                                0.0
                            }
                        })
                        .collect();
                    self.compute_duals(&c1);
                    self.primal_iter(bland, true)
                }
            };
            match res {
                IterResult::Continue => {}
                IterResult::Unbounded => {
                    return if mode == Mode::Phase1 { LpStatus::Infeasible } else { LpStatus::Unbounded };
                }
                IterResult::Infeasible => return LpStatus::Infeasible,
                IterResult::NoCandidate => {
                    if mode == Mode::Phase1 {
                        return LpStatus::Infeasible;
                    }
                    // Primal found no improving column: optimal up to tolerances.
                    self.refactor();
                    let cost = self.cost.clone();
                    self.compute_duals(&cost);
                    if self.primal_feasible() {
                        return LpStatus::Optimal;
                    }
                }
            }
        }
    }

    fn choose_entering(&self, bland: bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut best_score = 0.0;
        for j in 0..self.n + self.m {
            if self.is_basic(j) {
                continue;
            }
            let (up, down) = self.can_move(j);
            let dj = self.d[j];
            let dir = if up && dj < -DUAL_TOL {
                1.0
            } else if down && dj > DUAL_TOL {
                -1.0
            } else {
                continue;
            };
            if bland {
                return Some((j, dir));
            }
            if dj.abs() > best_score {
                best_score = dj.abs();
                best = Some((j, dir));
            }
        }
        best
    }

    fn primal_iter(&mut self, bland: bool, phase1: bool) -> IterResult {
        let Some((q, dir)) = self.choose_entering(bland) else {
            return IterResult::NoCandidate;
        };
        let alpha = self.ftran(q);
        let tol = self.feas_tol;
        // movement of basic p per unit step: -alpha[p] * dir
        let limit = |p: usize, relax: f64, s: &Simplex| -> f64 {
            let g = -alpha[p] * dir;
            if g.abs() <= PIVOT_TOL {
                return f64::INFINITY;
            }
            let b = s.head[p];
            let v = s.x[b];
            let (l, h) = (s.lo[b], s.hi[b]);
            if phase1 && v < l - tol {
                return if g > 0.0 { (l - v + relax) / g } else { f64::INFINITY };
            }
            if phase1 && v > h + tol {
                return if g < 0.0 { (v - h + relax) / -g } else { f64::INFINITY };
            }
            if g > 0.0 {
                if h.is_finite() { ((h - v + relax) / g).max(0.0) } else { f64::INFINITY }
            } else if l.is_finite() {
                ((v - l + relax) / -g).max(0.0)
            } else {
                f64::INFINITY
            }
        };
        let own = self.hi[q] - self.lo[q];
        let mut tmax = own;
        for p in 0..self.m {
            tmax = tmax.min(limit(p, tol, self));
        }
        if !tmax.is_finite() {
            return IterResult::Unbounded;
        }
        let mut leave: Option<usize> = None;
        let mut best_g = 0.0;
        let mut best_t = f64::INFINITY;
        for p in 0..self.m {
            let t = limit(p, 0.0, self);
            if t <= tmax {
                let g = alpha[p].abs();
                let better = if bland {
                    leave.is_none_or(|l: usize| t < best_t - 1e-12 || (t <= best_t + 1e-12 && self.head[p] < self.head[l]))
                } else {
                    g > best_g
                };
                if better {
                    best_g = g;
                    best_t = t;
                    leave = Some(p);
                }
            }
        }
        match leave {
            Some(r) if own > best_t || !own.is_finite() => {
                let t = best_t.max(0.0);
                let b = self.head[r];
                let g = -alpha[r] * dir;
                let target = if phase1 && self.x[b] < self.lo[b] - tol {
                    self.lo[b]
                } else if phase1 && self.x[b] > self.hi[b] + tol {
                    self.hi[b]
                } else if g > 0.0 {
                    self.hi[b]
                } else {
                    self.lo[b]
                };
                self.x[q] += dir * t;
                for (p, a) in alpha.iter().enumerate() {
                    let bp = self.head[p];
                    self.x[bp] -= a * dir * t;
                }
                self.x[b] = target;
                self.pivot(r, q, &alpha);
                IterResult::Continue
            }
            _ => {
                // bound flip of the entering column
                let t = own;
                self.x[q] = if dir > 0.0 { self.hi[q] } else { self.lo[q] };
                for (p, a) in alpha.iter().enumerate() {
                    let bp = self.head[p];
                    self.x[bp] -= a * dir * t;
                }
                IterResult::Continue
            }
        }
    }

    fn dual_iter(&mut self, bland: bool) -> IterResult {
        let m = self.m;
        let mut r = usize::MAX;
        let mut worst = 0.0;
        for p in 0..m {
            let inf = self.infeasibility(self.head[p]);
            if inf > 0.0 {
                let better = if bland { r == usize::MAX || self.head[p] < self.head[r] } else { inf > worst };
                if better {
                    worst = inf;
                    r = p;
                }
            }
        }
        if r == usize::MAX {
            return IterResult::NoCandidate;
        }
        let b = self.head[r];
        let below = self.x[b] < self.lo[b];
        let target = if below { self.lo[b] } else { self.hi[b] };
        let rowv: Vec<f64> = self.binv[r * m..(r + 1) * m].to_vec();
        // x_b changes by -alpha_rj * dz_j; it must increase when below.
        let mut cand: Vec<(usize, f64, f64)> = Vec::new();
        for j in 0..self.n + m {
            if self.is_basic(j) {
                continue;
            }
            let (up, down) = self.can_move(j);
            if !up && !down {
                continue;
            }
            let a = self.col_dot(j, &rowv);
            if a.abs() <= PIVOT_TOL {
                continue;
            }
            // dz_j sign needed: below => -a*dz > 0
            let need_up = if below { a < 0.0 } else { a > 0.0 };
            if (need_up && up) || (!need_up && down) {
                cand.push((j, a, self.d[j]));
            }
        }
        if cand.is_empty() {
            return IterResult::Infeasible;
        }
        let theta_max = cand
            .iter()
            .map(|&(_, a, d)| (d.abs() + DUAL_TOL) / a.abs())
            .fold(f64::INFINITY, f64::min);
        let mut q = usize::MAX;
        let mut best = 0.0;
        for &(j, a, d) in &cand {
            if d.abs() / a.abs() <= theta_max {
                let better = if bland { q == usize::MAX || j < q } else { a.abs() > best };
                if better {
                    best = a.abs();
                    q = j;
                }
            }
        }
        let alpha = self.ftran(q);
        let ar = alpha[r];
        if ar.abs() <= PIVOT_TOL {
            self.refactor();
            return IterResult::Continue;
        }
        let dz = (self.x[b] - target) / ar;
        self.x[q] += dz;
        for (p, a) in alpha.iter().enumerate() {
            let bp = self.head[p];
            self.x[bp] -= a * dz;
        }
        self.x[b] = target;
        self.pivot(r, q, &alpha);
        IterResult::Continue
    }
}

enum IterResult {
    Continue,
    Unbounded,
    Infeasible,
    NoCandidate,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(cols: Vec<Vec<(usize, f64)>>, obj: Vec<f64>, cb: Vec<(f64, f64)>, rb: Vec<(f64, f64)>) -> LpProblem {
        LpProblem {
            cols,
            obj,
            col_lo: cb.iter().map(|b| b.0).collect(),
            col_hi: cb.iter().map(|b| b.1).collect(),
            row_lo: rb.iter().map(|b| b.0).collect(),
            row_hi: rb.iter().map(|b| b.1).collect(),
        }
    }

    const INF: f64 = f64::INFINITY;

    #[test]
    fn small_maximization() {
        // max 3x + 2y st x + y <= 4, x + 3y <= 6, x <= 3
        let p = lp(
            vec![vec![(0, 1.0), (1, 1.0)], vec![(0, 1.0), (1, 3.0)]],
            vec![-3.0, -2.0],
            vec![(0.0, 3.0), (0.0, INF)],
            vec![(-INF, 4.0), (-INF, 6.0)],
        );
        let mut s = Simplex::new(&p);
        assert_eq!(s.solve(None), LpStatus::Optimal);
        assert!((s.objective() + 11.0).abs() < 1e-9);
        let x = s.primal();
        assert!((x[0] - 3.0).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_row() {
        // 0·x = 1
        let p = lp(vec![vec![]], vec![0.0], vec![(0.0, 1.0)], vec![(1.0, 1.0)]);
        assert_eq!(Simplex::new(&p).solve(None), LpStatus::Infeasible);
        // x + y = 3 with x, y <= 1
        let p = lp(
            vec![vec![(0, 1.0)], vec![(0, 1.0)]],
            vec![0.0, 0.0],
            vec![(0.0, 1.0), (0.0, 1.0)],
            vec![(3.0, 3.0)],
        );
        assert_eq!(Simplex::new(&p).solve(None), LpStatus::Infeasible);
    }

    #[test]
    fn unbounded() {
        // min -x st x - y <= 1, free y
        let p = lp(
            vec![vec![(0, 1.0)], vec![(0, -1.0)]],
            vec![-1.0, 0.0],
            vec![(0.0, INF), (-INF, INF)],
            vec![(-INF, 1.0)],
        );
        assert_eq!(Simplex::new(&p).solve(None), LpStatus::Unbounded);
    }

    #[test]
    fn equality_with_free_variables() {
        // min x1 + x2 st x1 - x2 + z = 2.5, z free in the row only
        let p = lp(
            vec![vec![(0, 1.0)], vec![(0, -1.0)], vec![(0, 1.0), (1, 1.0)]],
            vec![1.0, 1.0, 0.0],
            vec![(0.0, 10.0), (0.0, 10.0), (-INF, INF)],
            vec![(2.5, 2.5), (1.0, 1.0)],
        );
        let mut s = Simplex::new(&p);
        assert_eq!(s.solve(None), LpStatus::Optimal);
        assert!((s.objective() - 1.5).abs() < 1e-9);
    }

    #[test]
    fn warm_resolve_after_bound_change() {
        // min -x - y st x + 2y <= 4, 3x + y <= 6
        let p = lp(
            vec![vec![(0, 1.0), (1, 3.0)], vec![(0, 2.0), (1, 1.0)]],
            vec![-1.0, -1.0],
            vec![(0.0, INF), (0.0, INF)],
            vec![(-INF, 4.0), (-INF, 6.0)],
        );
        let mut s = Simplex::new(&p);
        assert_eq!(s.solve(None), LpStatus::Optimal);
        assert!((s.objective() + 2.8).abs() < 1e-9);
        s.set_col_bounds(0, 0.0, 1.0);
        assert_eq!(s.solve(None), LpStatus::Optimal);
        assert!((s.objective() + 2.5).abs() < 1e-9);
        s.set_col_bounds(0, 2.0, INF);
        assert_eq!(s.solve(None), LpStatus::Optimal);
        assert!((s.objective() + 2.0).abs() < 1e-9);
        s.set_col_bounds(0, 0.0, INF);
        s.set_col_bounds(1, 3.0, INF);
        assert_eq!(s.solve(None), LpStatus::Infeasible);
        s.set_col_bounds(1, 0.0, INF);
        assert_eq!(s.solve(None), LpStatus::Optimal);
        assert!((s.objective() + 2.8).abs() < 1e-9);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling example (Beale)
        let p = lp(
            vec![
                vec![(0, 0.25), (1, 0.5)],
                vec![(0, -60.0), (1, -90.0)],
                vec![(0, -0.04), (1, -0.02), (2, 1.0)],
                vec![(0, 9.0), (1, 3.0)],
            ],
            vec![-0.75, 150.0, -0.02, 6.0],
            vec![(0.0, INF); 4],
            vec![(-INF, 0.0), (-INF, 0.0), (-INF, 1.0)],
        );
        let mut s = Simplex::new(&p);
        assert_eq!(s.solve(None), LpStatus::Optimal);
        assert!((s.objective() + 0.05).abs() < 1e-9);
    }
}
