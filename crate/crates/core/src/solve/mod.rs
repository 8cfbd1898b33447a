//! Branch-and-bound mixed-integer solver.

mod bnb;
pub mod lp;
pub mod presolve;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::MipModel;

pub use bnb::{branch, BranchDecision};
pub use lp::{LpProblem, LpStatus, Simplex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub time_limit_s: f64,
    pub gap_tolerance: f64,
    pub integrality_tol: f64,
    pub feasibility_tol: f64,
    pub node_limit: Option<u64>,
    pub rng_seed: u64,
    pub threads: usize,
    /// Replace SOS-1 pairs by binary indicators instead of branching on them.
    pub sos_big_m: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            time_limit_s: 900.0,
            gap_tolerance: 1e-6,
            integrality_tol: 1e-6,
            feasibility_tol: 1e-7,
            node_limit: None,
            rng_seed: 0,
            threads: 1,
            sos_big_m: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Optimal,
    FeasibleTimeLimit,
    InfeasibleProven,
    NoSolutionTimeLimit,
    Unbounded,
}

impl SolveStatus {
    pub fn has_solution(self) -> bool {
        matches!(self, SolveStatus::Optimal | SolveStatus::FeasibleTimeLimit)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub incumbent: Option<Vec<f64>>,
    pub objective: Option<f64>,
    pub best_bound: f64,
    /// `(incumbent - bound) / max(1, |incumbent|)`, infinite without an incumbent.
    pub gap: f64,
    pub nodes_explored: u64,
    pub wall_time_s: f64,
    /// Successive values of the global bound.
    #[serde(skip)]
    pub bound_history: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid model: {0}")]
    Model(String),
}

pub fn gap(incumbent: f64, bound: f64) -> f64 {
    (incumbent - bound) / incumbent.abs().max(1.0)
}

pub fn solve(model: &MipModel, cfg: &SolveConfig) -> Result<SolveResult, SolveError> {
    solve_with_start(model, cfg, None)
}

/// Like [`solve`], seeding the search with `start` when it is feasible.
pub fn solve_with_start(model: &MipModel, cfg: &SolveConfig, start: Option<&[f64]>) -> Result<SolveResult, SolveError> {
    validate(model, cfg)?;
    if cfg.sos_big_m && !model.sos1.is_empty() {
        let big = model.with_big_m_sos();
        if big.vars.iter().any(|v| !v.upper.is_finite()) {
            return Err(SolveError::Model("big-M SOS reformulation needs finite upper bounds".into()));
        }
        let n = model.vars.len();
        let lifted_start = start.map(|s| {
            let mut v = s.to_vec();
            for group in &model.sos1 {
                for &j in group {
                    v.push(if s[j].abs() > cfg.integrality_tol { 1.0 } else { 0.0 });
                }
            }
            v
        });
        let mut cfg2 = cfg.clone();
        cfg2.sos_big_m = false;
        let mut res = bnb::run(&big, &cfg2, lifted_start.as_deref());
        if let Some(x) = res.incumbent.as_mut() {
            x.truncate(n);
        }
        return Ok(res);
    }
    Ok(bnb::run(model, cfg, start))
}

fn validate(model: &MipModel, cfg: &SolveConfig) -> Result<(), SolveError> {
    if !(cfg.time_limit_s > 0.0) {
        return Err(SolveError::Config("time limit must be positive".into()));
    }
    for (name, v) in [
        ("gap tolerance", cfg.gap_tolerance),
        ("integrality tolerance", cfg.integrality_tol),
        ("feasibility tolerance", cfg.feasibility_tol),
    ] {
        if !(v > 0.0) {
            return Err(SolveError::Config(format!("{name} must be positive")));
        }
    }
    if cfg.threads == 0 {
        return Err(SolveError::Config("threads must be at least 1".into()));
    }
    for (r, c) in model.constraints.iter().enumerate() {
        if !c.rhs.is_finite() {
            return Err(SolveError::Model(format!("row {r} has a non-finite right-hand side")));
        }
        for &(j, a) in &c.coeffs {
            if j >= model.vars.len() {
                return Err(SolveError::Model(format!("row {r} references unknown variable {j}")));
            }
            if !a.is_finite() {
                return Err(SolveError::Model(format!("row {r} has a non-finite coefficient")));
            }
        }
    }
    for &(j, c) in &model.objective {
        if j >= model.vars.len() || !c.is_finite() {
            return Err(SolveError::Model("bad objective term".into()));
        }
    }
    for g in &model.sos1 {
        if g.iter().any(|&j| j >= model.vars.len()) {
            return Err(SolveError::Model("SOS group references unknown variable".into()));
        }
    }
    for (j, v) in model.vars.iter().enumerate() {
        if v.lower.is_nan() || v.upper.is_nan() {
            return Err(SolveError::Model(format!("variable {j} has NaN bounds")));
        }
    }
    Ok(())
}
