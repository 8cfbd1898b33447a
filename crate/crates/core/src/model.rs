//! Integer programs for point connectivity and sampled contour approximation.
//!
//! Every connectivity row is written in lifted integer coordinates, so it has
//! small integral coefficients. Only the δ-box rows carry φ, because the
//! shift `g` and the samples live in the plane.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::golden::{SignedStrut, StrutCatalog, ZomePoint, PHI};

/// Default per-variable cap on strut counts when no budget is given.
pub const DEFAULT_GAMMA_BOUND: u64 = 30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("delta must be finite and non-negative")]
    BadDelta,
    #[error("assignment has {got} values, model has {want} variables")]
    WrongLength { got: usize, want: usize },
    #[error("row {row} ({name}) violated by {amount:e}")]
    RowViolation { row: usize, name: String, amount: f64 },
    #[error("variable {var} ({name}) out of bounds or not integral: {value}")]
    VarViolation { var: usize, name: String, value: f64 },
    #[error("node chain does not match node variables at node {0}")]
    ChainMismatch(usize),
    #[error("model has no path layout to decode")]
    NoLayout,
    #[error("integer overflow while decoding")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarKind {
    Integer,
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// How far `x` is outside the row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let act = self.activity(x);
        match self.sense {
            Sense::Le => (act - self.rhs).max(0.0),
            Sense::Ge => (self.rhs - act).max(0.0),
            Sense::Eq => (act - self.rhs).abs(),
        }
    }
}

/// Variables, rows, SOS-1 pairs and a minimization objective.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MipModel {
    pub vars: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub sos1: Vec<Vec<usize>>,
    pub objective: Vec<(usize, f64)>,
    pub layout: Layout,
}

/// What a model was built from, kept so solutions can be decoded.
#[derive(Debug, Clone, Default, PartialEq)]
pub enum Layout {
    #[default]
    None,
    Dpc(DpcLayout),
    Path(PathLayout),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DpcLayout {
    pub catalog: StrutCatalog,
    pub target: ZomePoint,
    pub signed: Vec<SignedStrut>,
    pub gamma: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathLayout {
    pub catalog: StrutCatalog,
    pub samples: Vec<[f64; 2]>,
    pub delta: f64,
    pub cyclic: bool,
    pub exact_endpoints: bool,
    pub shift: [usize; 2],
    pub nodes: Vec<[usize; 4]>,
    pub signed: Vec<SignedStrut>,
    /// `gamma[s][i]` is the variable counting `signed[i]` in segment `s`.
    pub gamma: Vec<Vec<usize>>,
}

impl PathLayout {
    pub fn num_segments(&self) -> usize {
        self.gamma.len()
    }

    /// Half-width of the box around sample `i`.
    pub fn box_half_width(&self, i: usize) -> f64 {
        half_width(self.delta, self.cyclic, self.exact_endpoints, self.samples.len(), i)
    }
}

impl MipModel {
    pub fn add_var(&mut self, name: impl Into<String>, kind: VarKind, lower: f64, upper: f64) -> usize {
        self.vars.push(Variable { name: name.into(), kind, lower, upper });
        self.vars.len() - 1
    }

    pub fn add_row(&mut self, name: impl Into<String>, coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) -> usize {
        self.constraints.push(Constraint { name: name.into(), coeffs, sense, rhs });
        self.constraints.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_int_vars(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Integer).count()
    }

    pub fn num_cont_vars(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Continuous).count()
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().map(|&(j, c)| c * x[j]).sum()
    }

    /// True when every objective coefficient is integral and only integer
    /// variables appear, so optimal values are integers.
    pub fn objective_is_integral(&self) -> bool {
        self.objective
            .iter()
            .all(|&(j, c)| self.vars[j].kind == VarKind::Integer && c.fract() == 0.0)
    }

    /// True when the row only involves integer variables with integral
    /// coefficients and right-hand side, so it can be checked exactly.
    pub fn row_is_integral(&self, r: usize) -> bool {
        let c = &self.constraints[r];
        c.rhs.fract() == 0.0
            && c.rhs.abs() < 1e15
            && c.coeffs
                .iter()
                .all(|&(j, a)| self.vars[j].kind == VarKind::Integer && a.fract() == 0.0 && a.abs() < 1e15)
    }

    /// Checks bounds, integrality and every row. Integral rows are checked
    /// exactly after rounding the integer variables.
    pub fn check_assignment(&self, x: &[f64], tol: f64) -> Result<(), ModelError> {
        if x.len() != self.vars.len() {
            return Err(ModelError::WrongLength { got: x.len(), want: self.vars.len() });
        }
        for (j, v) in self.vars.iter().enumerate() {
            let val = x[j];
            let bad = !val.is_finite()
                || val < v.lower - tol
                || val > v.upper + tol
                || (v.kind == VarKind::Integer && (val - val.round()).abs() > tol);
            if bad {
                return Err(ModelError::VarViolation { var: j, name: v.name.clone(), value: val });
            }
        }
        for (r, c) in self.constraints.iter().enumerate() {
            if self.row_is_integral(r) {
                let act: i128 = c.coeffs.iter().map(|&(j, a)| a as i128 * x[j].round() as i128).sum();
                let rhs = c.rhs as i128;
                let ok = match c.sense {
                    Sense::Le => act <= rhs,
                    Sense::Ge => act >= rhs,
                    Sense::Eq => act == rhs,
                };
                if !ok {
                    return Err(ModelError::RowViolation {
                        row: r,
                        name: c.name.clone(),
                        amount: (act - rhs).abs() as f64,
                    });
                }
            } else {
                let v = c.violation(x);
                if v > tol {
                    return Err(ModelError::RowViolation { row: r, name: c.name.clone(), amount: v });
                }
            }
        }
        for group in &self.sos1 {
            let nonzero = group.iter().filter(|&&j| x[j].abs() > tol).count();
            if nonzero > 1 {
                return Err(ModelError::RowViolation {
                    row: usize::MAX,
                    name: format!("sos1 {group:?}"),
                    amount: nonzero as f64,
                });
            }
        }
        Ok(())
    }

    /// Replaces every SOS-1 pair by binary indicators `z` with
    /// `x ≤ ub(x)·z` and `Σ z ≤ 1`. Requires finite upper bounds.
    pub fn with_big_m_sos(&self) -> MipModel {
        let mut m = self.clone();
        let groups = std::mem::take(&mut m.sos1);
        for (gi, group) in groups.iter().enumerate() {
            let mut zs = Vec::with_capacity(group.len());
            for &j in group {
                let ub = m.vars[j].upper;
                let z = m.add_var(format!("z{gi}_{j}"), VarKind::Integer, 0.0, 1.0);
                m.add_row(format!("bigm{gi}_{j}"), vec![(j, 1.0), (z, -ub)], Sense::Le, 0.0);
                zs.push((z, 1.0));
            }
            m.add_row(format!("sos{gi}"), zs, Sense::Le, 1.0);
        }
        m
    }

    /// CPLEX LP-format text, for cross-checking with external solvers.
    pub fn to_lp_string(&self) -> String {
        let mut s = String::new();
        let name = |j: usize| sanitize(&self.vars[j].name);
        let terms = |coeffs: &[(usize, f64)]| -> String {
            if coeffs.is_empty() {
                return "0 ".to_string() + &name(0);
            }
            let mut t = String::new();
            for (i, &(j, a)) in coeffs.iter().enumerate() {
                if i > 0 || a < 0.0 {
                    t.push_str(if a < 0.0 { " - " } else { " + " });
                }
                let _ = write!(t, "{:?} {}", a.abs(), name(j));
            }
            t
        };
        s.push_str("\\ generated model\nMinimize\n obj: ");
        s.push_str(&terms(&self.objective));
        s.push_str("\nSubject To\n");
        for (r, c) in self.constraints.iter().enumerate() {
            let _ = writeln!(s, " r{}_{}: {} {} {:?}", r, sanitize(&c.name), terms(&c.coeffs), c.sense, c.rhs);
        }
        s.push_str("Bounds\n");
        for (j, v) in self.vars.iter().enumerate() {
            let lo = if v.lower.is_finite() { format!("{:?}", v.lower) } else { "-inf".into() };
            let hi = if v.upper.is_finite() { format!("{:?}", v.upper) } else { "+inf".into() };
            let _ = writeln!(s, " {lo} <= {} <= {hi}", name(j));
        }
        let ints: Vec<String> = (0..self.vars.len())
            .filter(|&j| self.vars[j].kind == VarKind::Integer)
            .map(name)
            .collect();
        if !ints.is_empty() {
            s.push_str("Generals\n");
            for chunk in ints.chunks(8) {
                let _ = writeln!(s, " {}", chunk.join(" "));
            }
        }
        if !self.sos1.is_empty() {
            s.push_str("SOS\n");
            for (g, group) in self.sos1.iter().enumerate() {
                let members: Vec<String> = group.iter().enumerate().map(|(w, &j)| format!("{}:{}", name(j), w + 1)).collect();
                let _ = writeln!(s, " s{g}: S1:: {}", members.join(" "));
            }
        }
        s.push_str("End\n");
        s
    }
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '.' { c } else { '_' })
        .collect()
}

/// Options shared by the path and cycle builders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathOptions {
    pub use_sos1: bool,
    /// Upper bound on each strut count when its type has no budget.
    pub gamma_bound: u64,
    /// Close the path back to the first node.
    pub cyclic: bool,
    /// For open paths, place the first and last node exactly on their samples.
    pub exact_endpoints: bool,
}

impl Default for PathOptions {
    fn default() -> Self {
        PathOptions { use_sos1: true, gamma_bound: DEFAULT_GAMMA_BOUND, cyclic: true, exact_endpoints: false }
    }
}

fn half_width(delta: f64, cyclic: bool, exact_endpoints: bool, k: usize, i: usize) -> f64 {
    if exact_endpoints && !cyclic && (i == 0 || i + 1 == k) {
        0.0
    } else {
        delta
    }
}

fn gamma_upper(catalog: &StrutCatalog, s: &SignedStrut, default: u64) -> f64 {
    catalog.types[s.type_index].budget.unwrap_or(default) as f64
}

fn strut_name(catalog: &StrutCatalog, s: &SignedStrut) -> String {
    let sign = match s.sign {
        crate::golden::Sign::Plus => "p",
        crate::golden::Sign::Minus => "m",
    };
    format!("{}_{}{}", catalog.types[s.type_index].label(), s.column, sign)
}

/// Pairs `(γ⁺_j, γ⁻_j)` for one block of γ variables in signed-strut order.
fn sos_pairs(signed: &[SignedStrut], vars: &[usize]) -> Vec<Vec<usize>> {
    signed
        .chunks(2)
        .zip(vars.chunks(2))
        .map(|(_, v)| vec![v[0], v[1]])
        .collect()
}

fn lifted_terms(catalog: &StrutCatalog, signed: &[SignedStrut], vars: &[usize], comp: usize, scale: f64) -> Vec<(usize, f64)> {
    signed
        .iter()
        .zip(vars)
        .filter_map(|(s, &v)| {
            let c = catalog.lifted(s).lifted[comp];
            (c != 0).then_some((v, scale * c as f64))
        })
        .collect()
}

fn budget_rows(m: &mut MipModel, catalog: &StrutCatalog, signed: &[SignedStrut], blocks: &[Vec<usize>]) {
    for (t, ty) in catalog.types.iter().enumerate() {
        if let Some(b) = ty.budget {
            let coeffs: Vec<(usize, f64)> = blocks
                .iter()
                .flat_map(|blk| signed.iter().zip(blk).filter(|(s, _)| s.type_index == t).map(|(_, &v)| (v, 1.0)))
                .collect();
            m.add_row(format!("budget_{}", ty.label()), coeffs, Sense::Le, b as f64);
        }
    }
}

fn build_dpc(catalog: &StrutCatalog, target: &ZomePoint, use_sos1: bool, shortest: bool, gamma_bound: u64) -> MipModel {
    let mut m = MipModel::default();
    let signed = catalog.signed_struts();
    let gamma: Vec<usize> = signed
        .iter()
        .map(|s| m.add_var(strut_name(catalog, s), VarKind::Integer, 0.0, gamma_upper(catalog, s, gamma_bound)))
        .collect();
    for comp in 0..4 {
        let coeffs = lifted_terms(catalog, &signed, &gamma, comp, 1.0);
        m.add_row(format!("reach{comp}"), coeffs, Sense::Eq, target.lifted[comp] as f64);
    }
    budget_rows(&mut m, catalog, &signed, std::slice::from_ref(&gamma));
    if use_sos1 {
        m.sos1 = sos_pairs(&signed, &gamma);
    }
    if shortest {
        m.objective = gamma.iter().map(|&v| (v, 1.0)).collect();
    }
    m.layout = Layout::Dpc(DpcLayout { catalog: catalog.clone(), target: *target, signed, gamma });
    m
}

/// Can `target` be reached from the origin with struts of `catalog`?
/// Zero objective; one integer count per signed strut column.
pub fn build_dpc_feasibility(catalog: &StrutCatalog, target: &ZomePoint, use_sos1: bool) -> MipModel {
    build_dpc(catalog, target, use_sos1, false, DEFAULT_GAMMA_BOUND)
}

/// Fewest struts reaching `target` from the origin.
pub fn build_dpc_shortest(catalog: &StrutCatalog, target: &ZomePoint) -> MipModel {
    build_dpc(catalog, target, false, true, DEFAULT_GAMMA_BOUND)
}

pub fn build_dpc_shortest_bounded(catalog: &StrutCatalog, target: &ZomePoint, gamma_bound: u64) -> MipModel {
    build_dpc(catalog, target, false, true, gamma_bound)
}

/// Closed strut cycle through δ-boxes around `samples`, minimizing the
/// number of struts.
pub fn build_dcas(catalog: &StrutCatalog, samples: &[[f64; 2]], delta: f64, use_sos1: bool) -> Result<MipModel, ModelError> {
    build_path_model(catalog, samples, delta, PathOptions { use_sos1, ..PathOptions::default() })
}

pub fn build_path_model(
    catalog: &StrutCatalog,
    samples: &[[f64; 2]],
    delta: f64,
    opts: PathOptions,
) -> Result<MipModel, ModelError> {
    let k = samples.len();
    let min = if opts.cyclic { 3 } else { 2 };
    if k < min {
        return Err(ModelError::TooFewSamples { min, got: k });
    }
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(ModelError::BadDelta);
    }
    let mut m = MipModel::default();
    let shift = [
        m.add_var("gx", VarKind::Continuous, f64::NEG_INFINITY, f64::INFINITY),
        m.add_var("gy", VarKind::Continuous, f64::NEG_INFINITY, f64::INFINITY),
    ];
    let nodes: Vec<[usize; 4]> = (0..k)
        .map(|i| {
            ["a1", "b1", "a2", "b2"].map(|c| m.add_var(format!("x{i}_{c}"), VarKind::Integer, f64::NEG_INFINITY, f64::INFINITY))
        })
        .collect();
    let signed = catalog.signed_struts();
    let nseg = if opts.cyclic { k } else { k - 1 };
    let gamma: Vec<Vec<usize>> = (0..nseg)
        .map(|s| {
            signed
                .iter()
                .map(|st| {
                    m.add_var(
                        format!("g{s}_{}", strut_name(catalog, st)),
                        VarKind::Integer,
                        0.0,
                        gamma_upper(catalog, st, opts.gamma_bound),
                    )
                })
                .collect()
        })
        .collect();

    for c in 0..4 {
        m.add_row(format!("anchor{c}"), vec![(nodes[0][c], 1.0)], Sense::Eq, 0.0);
    }
    for (i, p) in samples.iter().enumerate() {
        let hw = half_width(delta, opts.cyclic, opts.exact_endpoints, k, i);
        for axis in 0..2 {
            let coeffs = vec![(nodes[i][2 * axis], 1.0), (nodes[i][2 * axis + 1], PHI), (shift[axis], 1.0)];
            let tag = ["x", "y"][axis];
            if hw == 0.0 {
                m.add_row(format!("pin{i}{tag}"), coeffs, Sense::Eq, p[axis]);
            } else {
                m.add_row(format!("boxlo{i}{tag}"), coeffs.clone(), Sense::Ge, p[axis] - hw);
                m.add_row(format!("boxhi{i}{tag}"), coeffs, Sense::Le, p[axis] + hw);
            }
        }
    }
    for (s, blk) in gamma.iter().enumerate() {
        let next = (s + 1) % k;
        for c in 0..4 {
            let mut coeffs = vec![(nodes[next][c], 1.0), (nodes[s][c], -1.0)];
            coeffs.extend(lifted_terms(catalog, &signed, blk, c, -1.0));
            m.add_row(format!("link{s}_{c}"), coeffs, Sense::Eq, 0.0);
        }
    }
    budget_rows(&mut m, catalog, &signed, &gamma);
    if opts.use_sos1 {
        for blk in &gamma {
            m.sos1.extend(sos_pairs(&signed, blk));
        }
    }
    m.objective = gamma.iter().flatten().map(|&v| (v, 1.0)).collect();
    m.layout = Layout::Path(PathLayout {
        catalog: catalog.clone(),
        samples: samples.to_vec(),
        delta,
        cyclic: opts.cyclic,
        exact_endpoints: opts.exact_endpoints,
        shift,
        nodes,
        signed,
        gamma,
    });
    Ok(m)
}

/// A decoded path or cycle: shift, exact node chain and strut counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDecode {
    pub shift: [f64; 2],
    pub nodes: Vec<ZomePoint>,
    /// Per segment, the strut uses with their multiplicities.
    pub segment_struts: Vec<Vec<(SignedStrut, u64)>>,
}

impl SolutionDecode {
    pub fn total_struts(&self) -> u64 {
        self.segment_struts.iter().flatten().map(|(_, n)| n).sum()
    }

    /// Plane position of node `i` including the shift.
    pub fn node_position(&self, i: usize) -> [f64; 2] {
        let p = self.nodes[i].project();
        [p[0] + self.shift[0], p[1] + self.shift[1]]
    }

    /// Counts per strut type across all segments.
    pub fn type_usage(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for (s, n) in self.segment_struts.iter().flatten() {
            *out.entry(s.type_index).or_insert(0) += n;
        }
        out
    }
}

/// Decodes a path/cycle assignment. The node chain is rebuilt from the
/// rounded strut counts in exact integer arithmetic and compared with the
/// node variables.
pub fn decode_solution(model: &MipModel, x: &[f64]) -> Result<SolutionDecode, ModelError> {
    let Layout::Path(lay) = &model.layout else {
        return Err(ModelError::NoLayout);
    };
    model.check_assignment(x, 1e-6)?;
    let mut segment_struts = Vec::with_capacity(lay.gamma.len());
    let mut chain = vec![ZomePoint::ORIGIN];
    for blk in &lay.gamma {
        let mut uses = Vec::new();
        let mut p = *chain.last().expect("non-empty");
        for (s, &v) in lay.signed.iter().zip(blk) {
            let n = x[v].round() as i64;
            if n > 0 {
                p = p.checked_add_scaled(&lay.catalog.lifted(s), n).map_err(|_| ModelError::Overflow)?;
                uses.push((*s, n as u64));
            }
        }
        chain.push(p);
        segment_struts.push(uses);
    }
    let k = lay.nodes.len();
    for (i, idx) in lay.nodes.iter().enumerate() {
        let want = ZomePoint { lifted: idx.map(|j| x[j].round() as i64) };
        if chain[i] != want {
            return Err(ModelError::ChainMismatch(i));
        }
    }
    if lay.cyclic && chain[k] != chain[0] {
        return Err(ModelError::ChainMismatch(k));
    }
    chain.truncate(k);
    Ok(SolutionDecode { shift: [x[lay.shift[0]], x[lay.shift[1]]], nodes: chain, segment_struts })
}

/// Strut counts of a DPC assignment, with the reached point.
pub fn decode_dpc(model: &MipModel, x: &[f64]) -> Result<(ZomePoint, Vec<(SignedStrut, u64)>), ModelError> {
    let Layout::Dpc(lay) = &model.layout else {
        return Err(ModelError::NoLayout);
    };
    model.check_assignment(x, 1e-6)?;
    let mut p = ZomePoint::ORIGIN;
    let mut uses = Vec::new();
    for (s, &v) in lay.signed.iter().zip(&lay.gamma) {
        let n = x[v].round() as i64;
        if n > 0 {
            p = p.checked_add_scaled(&lay.catalog.lifted(s), n).map_err(|_| ModelError::Overflow)?;
            uses.push((*s, n as u64));
        }
    }
    Ok((p, uses))
}

/// Assignment for a path model from a shift, node chain and strut counts.
pub fn encode_solution(model: &MipModel, sol: &SolutionDecode) -> Result<Vec<f64>, ModelError> {
    let Layout::Path(lay) = &model.layout else {
        return Err(ModelError::NoLayout);
    };
    let mut x = vec![0.0; model.vars.len()];
    x[lay.shift[0]] = sol.shift[0];
    x[lay.shift[1]] = sol.shift[1];
    for (idx, p) in lay.nodes.iter().zip(&sol.nodes) {
        for c in 0..4 {
            x[idx[c]] = p.lifted[c] as f64;
        }
    }
    for (blk, uses) in lay.gamma.iter().zip(&sol.segment_struts) {
        for (s, n) in uses {
            let pos = lay.signed.iter().position(|t| t == s).ok_or(ModelError::NoLayout)?;
            x[blk[pos]] += *n as f64;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::{GoldenNum, Sign, StrutColor, StrutLength};
    use proptest::prelude::*;

    fn std_cat() -> StrutCatalog {
        StrutCatalog::standard()
    }

    #[test]
    fn dpc_sizes_and_zero_target() {
        let m = build_dpc_feasibility(&std_cat(), &ZomePoint::ORIGIN, true);
        assert_eq!(m.num_int_vars(), 36);
        assert_eq!(m.constraints.len(), 4);
        assert_eq!(m.sos1.len(), 18);
        assert!(m.objective.is_empty());
        m.check_assignment(&vec![0.0; 36], 1e-9).unwrap();
    }

    #[test]
    fn dpc_medium_blue() {
        let cat = std_cat();
        let m = build_dpc_feasibility(&cat, &ZomePoint::new(0, 2, 0, 0), true);
        let Layout::Dpc(lay) = &m.layout else { panic!() };
        let bm = cat.find(StrutColor::Blue, StrutLength::Medium).unwrap();
        let mut x = vec![0.0; m.num_vars()];
        let pos = lay
            .signed
            .iter()
            .position(|s| *s == SignedStrut { type_index: bm, column: 0, sign: Sign::Plus })
            .unwrap();
        x[lay.gamma[pos]] = 1.0;
        m.check_assignment(&x, 1e-9).unwrap();
        let (p, uses) = decode_dpc(&m, &x).unwrap();
        assert_eq!(p, ZomePoint::new(0, 2, 0, 0));
        assert_eq!(uses.len(), 1);
    }

    #[test]
    fn shortest_has_full_objective_and_no_sos() {
        let m = build_dpc_shortest(&std_cat(), &ZomePoint::new(2, 2, 0, 0));
        assert_eq!(m.objective.len(), 36);
        assert!(m.sos1.is_empty());
        assert!(m.objective_is_integral());
    }

    #[test]
    fn budgets_bound_gamma_and_add_rows() {
        let cat = std_cat().with_budgets([(0, 3), (4, 0)]);
        let m = build_dpc_feasibility(&cat, &ZomePoint::ORIGIN, false);
        assert_eq!(m.constraints.len(), 6);
        assert_eq!(m.vars[0].upper, 3.0);
        assert_eq!(m.vars[4 * 4].upper, 0.0);
        assert_eq!(m.vars[8].upper, DEFAULT_GAMMA_BOUND as f64);
        let b = m.constraints.iter().find(|c| c.name == "budget_blue-short").unwrap();
        assert_eq!(b.coeffs.len(), 4);
        assert_eq!(b.rhs, 3.0);
    }

    #[test]
    fn dcas_sizes_match_closed_form() {
        let cat = std_cat();
        for k in 3..=50 {
            let pts: Vec<[f64; 2]> = (0..k).map(|i| [i as f64, (i * i) as f64]).collect();
            let m = build_dcas(&cat, &pts, 1.0, true).unwrap();
            assert_eq!(m.num_cont_vars(), 2);
            assert_eq!(m.num_int_vars(), 4 * k + 36 * k);
            assert_eq!(m.constraints.len(), 4 + 4 * k + 4 * k);
            assert_eq!(m.sos1.len(), 18 * k);
            assert_eq!(m.objective.len(), 36 * k);
            for c in &m.constraints {
                assert!(c.coeffs.iter().all(|&(j, _)| j < m.num_vars()));
            }
        }
        assert!(matches!(
            build_dcas(&cat, &[[0.0, 0.0], [1.0, 0.0]], 1.0, true),
            Err(ModelError::TooFewSamples { .. })
        ));
    }

    fn square_solution(m: &MipModel) -> (SolutionDecode, Vec<f64>) {
        let cat = std_cat();
        let bl = cat.find(StrutColor::Blue, StrutLength::Long).unwrap();
        let use_ = |column, sign| vec![(SignedStrut { type_index: bl, column, sign }, 1u64)];
        let sol = SolutionDecode {
            shift: [0.0, 0.0],
            nodes: vec![
                ZomePoint::new(0, 0, 0, 0),
                ZomePoint::new(2, 2, 0, 0),
                ZomePoint::new(2, 2, 2, 2),
                ZomePoint::new(0, 0, 2, 2),
            ],
            segment_struts: vec![
                use_(0, Sign::Plus),
                use_(1, Sign::Plus),
                use_(0, Sign::Minus),
                use_(1, Sign::Minus),
            ],
        };
        let x = encode_solution(m, &sol).unwrap();
        (sol, x)
    }

    fn square_samples() -> Vec<[f64; 2]> {
        let s = GoldenNum::new(2, 2).to_f64();
        vec![[0.0, 0.0], [s, 0.0], [s, s], [0.0, s]]
    }

    #[test]
    fn square_construction_is_feasible_and_decodes() {
        let m = build_dcas(&std_cat(), &square_samples(), 0.1, true).unwrap();
        let (sol, x) = square_solution(&m);
        assert_eq!(m.objective_value(&x), 4.0);
        let dec = decode_solution(&m, &x).unwrap();
        assert_eq!(dec, sol);
        let s = square_samples();
        for i in 0..4 {
            let p = dec.node_position(i);
            assert!((p[0] - s[i][0]).abs() <= 1e-9 && (p[1] - s[i][1]).abs() <= 1e-9);
        }
    }

    #[test]
    fn zero_assignment_on_tiny_triangle() {
        let pts = [[0.0, 0.0], [0.1, 0.0], [0.0, 0.1]];
        let m = build_dcas(&std_cat(), &pts, 1.0, true).unwrap();
        let dec = decode_solution(&m, &vec![0.0; m.num_vars()]).unwrap();
        assert_eq!(dec.nodes, vec![ZomePoint::ORIGIN; 3]);
        assert_eq!(dec.total_struts(), 0);
    }

    #[test]
    fn tampered_assignment_is_rejected() {
        let m = build_dcas(&std_cat(), &square_samples(), 0.1, true).unwrap();
        let (_, mut x) = square_solution(&m);
        let Layout::Path(lay) = &m.layout else { panic!() };
        x[lay.gamma[1][0]] += 1.0;
        assert!(matches!(decode_solution(&m, &x), Err(ModelError::RowViolation { .. })));
    }

    #[test]
    fn open_path_with_pinned_ends() {
        let cat = std_cat();
        let pts = [[0.0, 0.0], [2.0, 0.0], [4.0, 0.0]];
        let opts = PathOptions { cyclic: false, exact_endpoints: true, ..PathOptions::default() };
        let m = build_path_model(&cat, &pts, 0.5, opts).unwrap();
        assert_eq!(m.num_int_vars(), 4 * 3 + 36 * 2);
        assert_eq!(m.constraints.iter().filter(|c| c.name.starts_with("pin")).count(), 4);
        assert_eq!(m.constraints.iter().filter(|c| c.name.starts_with("link")).count(), 8);
    }

    #[test]
    fn lp_format_mentions_everything() {
        let m = build_dcas(&std_cat(), &square_samples(), 0.1, true).unwrap();
        let lp = m.to_lp_string();
        assert!(lp.starts_with("\\ generated model\nMinimize"));
        for section in ["Subject To", "Bounds", "Generals", "SOS", "End"] {
            assert!(lp.contains(section), "{section}");
        }
        assert_eq!(lp.matches(" S1:: ").count(), m.sos1.len());
        assert!(lp.contains("-inf <= gx <= +inf"));
    }

    #[test]
    fn big_m_sos_adds_binaries() {
        let m = build_dpc_feasibility(&std_cat(), &ZomePoint::ORIGIN, true);
        let b = m.with_big_m_sos();
        assert!(b.sos1.is_empty());
        assert_eq!(b.num_vars(), 72);
        assert_eq!(b.constraints.len(), 4 + 36 + 18);
    }

    fn arb_uses() -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(0u8..3, 36)
    }

    proptest! {
        #[test]
        fn dpc_rows_match_plane_sum(counts in arb_uses()) {
            let cat = std_cat();
            let signed = cat.signed_struts();
            let mut target = ZomePoint::ORIGIN;
            let mut plane = [0.0f64; 2];
            for (s, &n) in signed.iter().zip(&counts) {
                target = target.checked_add_scaled(&cat.lifted(s), n as i64).unwrap();
                let v = cat.plane(s);
                plane[0] += n as f64 * v[0];
                plane[1] += n as f64 * v[1];
            }
            let m = build_dpc_feasibility(&cat, &target, false);
            let x: Vec<f64> = counts.iter().map(|&n| n as f64).collect();
            m.check_assignment(&x, 1e-9).unwrap();
            let p = target.project();
            prop_assert!((p[0] - plane[0]).abs() <= 1e-9 && (p[1] - plane[1]).abs() <= 1e-9);
        }

        #[test]
        fn sos_pairs_are_opposite_signs(k in 3usize..8) {
            let pts: Vec<[f64; 2]> = (0..k).map(|i| [i as f64, 0.0]).collect();
            let m = build_dcas(&std_cat(), &pts, 1.0, true).unwrap();
            let Layout::Path(lay) = &m.layout else { panic!() };
            let mut it = m.sos1.iter();
            for blk in &lay.gamma {
                for j in (0..36).step_by(2) {
                    let g = it.next().unwrap();
                    prop_assert_eq!(g, &vec![blk[j], blk[j + 1]]);
                    let (a, b) = (lay.signed[j], lay.signed[j + 1]);
                    prop_assert_eq!((a.type_index, a.column, a.sign), (b.type_index, b.column, Sign::Plus));
                    prop_assert_eq!(b.sign, Sign::Minus);
                }
            }
        }
    }
}
