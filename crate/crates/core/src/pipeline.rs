//! End-to-end contour approximation: contour, samples, strut counts,
//! arrangement, crossings, and a full re-check of the result.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrange::{detect_crossings, strut_cost, ArrangeError, ArrangeMode, Arranger, Crossing, ZomeCycle};
use crate::field::{extract_contour, ContourPolyline, DistanceField, FieldError};
use crate::golden::StrutCatalog;
use crate::instance::{apply_budgets, InstanceError};
use crate::model::{build_path_model, decode_solution, Layout, MipModel, ModelError, PathOptions, SolutionDecode};
use crate::sampling::{sample, SamplingConfig, SamplingError};
use crate::solve::{gap, solve_with_start, SolveConfig, SolveError, SolveStatus};
use crate::start::{heuristic_start, DEFAULT_EXPANSIONS};

/// Tolerance for re-checking box membership and row feasibility.
pub const CHECK_TOL: f64 = 1e-6;
/// Tolerance for the recomputed arrangement cost.
pub const COST_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Arrange(#[from] ArrangeError),
    #[error("{0}")]
    Config(String),
    #[error("the model is infeasible: no strut cycle fits these boxes")]
    Infeasible,
    #[error("no good solution exists within the current model parameters (time limit {0} s)")]
    NoSolution(f64),
    #[error("solver reported an unbounded model")]
    Unbounded,
    #[error("solution failed re-validation: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Field units per plane unit; struts are placed at field / scale.
    pub scale: f64,
    pub delta: f64,
    pub sampling: SamplingConfig,
    pub solver: SolveConfig,
    pub arrange: ArrangeMode,
    pub use_sos1: bool,
    pub budgets: BTreeMap<String, u64>,
    /// Seed the solver with a constructed cycle.
    pub warm_start: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scale: 2.0,
            delta: 4.0,
            sampling: SamplingConfig::default(),
            solver: SolveConfig::default(),
            arrange: ArrangeMode::Auto,
            use_sos1: true,
            budgets: BTreeMap::new(),
            warm_start: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(PipelineError::Config("scale must be positive".into()));
        }
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(PipelineError::Config("delta must be positive".into()));
        }
        if self.sampling.k_max < self.sampling.k_c {
            return Err(SamplingError::BadLimits { k_c: self.sampling.k_c, k_max: self.sampling.k_max }.into());
        }
        Ok(())
    }

    pub fn catalog(&self) -> Result<StrutCatalog, PipelineError> {
        Ok(apply_budgets(StrutCatalog::standard(), &self.budgets)?)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub contour_s: f64,
    pub sampling_s: f64,
    pub start_s: f64,
    pub solve_s: f64,
    pub arrange_s: f64,
    pub total_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub status: SolveStatus,
    pub scale: f64,
    pub delta: f64,
    pub k_c: usize,
    pub k: usize,
    pub struts: u64,
    pub objective: f64,
    pub bound: f64,
    pub gap: f64,
    pub nodes_explored: u64,
    pub warm_started: bool,
    pub total_cost: f64,
    pub crossings: usize,
    pub timings: Timings,
}

impl RunReport {
    /// One line in the style `s=2, δ=4, k_c=35 -> k=47 (314 struts, MIP gap 6.69%)`.
    pub fn summary(&self) -> String {
        format!(
            "s={}, δ={}, k_c={} -> k={} ({} struts, MIP gap {:.2}%)",
            self.scale,
            self.delta,
            self.k_c,
            self.k,
            self.struts,
            100.0 * self.gap
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub lifted: [i64; 4],
    /// Plane position, shift included.
    pub position: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrutRecord {
    pub label: String,
    pub column: usize,
    pub sign: i64,
    pub start: [f64; 2],
    pub end: [f64; 2],
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentRecord {
    pub from: usize,
    pub to: usize,
    pub struts: Vec<StrutRecord>,
    pub cost: f64,
}

/// The JSON solution document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub status: SolveStatus,
    pub objective: f64,
    pub bound: f64,
    pub gap: f64,
    pub scale: f64,
    pub delta: f64,
    pub samples: Vec<[f64; 2]>,
    pub shift: [f64; 2],
    pub nodes: Vec<NodeRecord>,
    pub segments: Vec<SegmentRecord>,
    pub total_cost: f64,
    pub crossings: Vec<Crossing>,
}

impl Solution {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solutions always serialize")
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub report: RunReport,
    pub solution: Solution,
    pub catalog: StrutCatalog,
    /// Contour in plane coordinates.
    pub contour: ContourPolyline,
    pub samples: Vec<[f64; 2]>,
    pub model: MipModel,
    pub assignment: Vec<f64>,
    pub decode: SolutionDecode,
    pub cycle: ZomeCycle,
    pub crossings: Vec<Crossing>,
}

impl PipelineOutput {
    pub fn scene(&self) -> crate::svg::Scene<'_> {
        crate::svg::Scene {
            contour: &self.contour,
            samples: &self.samples,
            delta: self.report.delta,
            cycle: Some(&self.cycle),
            catalog: &self.catalog,
        }
    }
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

/// Runs the whole approximation on a distance field.
pub fn run_pipeline(field: &DistanceField, cfg: &RunConfig) -> Result<PipelineOutput, PipelineError> {
    cfg.validate()?;
    let catalog = cfg.catalog()?;
    let t_all = Instant::now();
    let mut timings = Timings::default();

    let t = Instant::now();
    let raw = extract_contour(field)?;
    let contour = ContourPolyline {
        points: raw.points.iter().map(|p| [p[0] / cfg.scale, p[1] / cfg.scale]).collect(),
        closed: raw.closed,
    };
    timings.contour_s = secs(t);

    let t = Instant::now();
    let plan = sample(&contour, &cfg.sampling)?;
    let samples = plan.points(&contour);
    timings.sampling_s = secs(t);
    log::info!("{} samples with scheme {}", samples.len(), plan.scheme);

    let opts = PathOptions { use_sos1: cfg.use_sos1, ..PathOptions::default() };
    let model = build_path_model(&catalog, &samples, cfg.delta, opts)?;

    let t = Instant::now();
    let start = if cfg.warm_start { heuristic_start(&model, DEFAULT_EXPANSIONS) } else { None };
    timings.start_s = secs(t);
    if let Some(x) = &start {
        log::info!("constructed start with {} struts", model.objective_value(x));
    }

    let t = Instant::now();
    let res = solve_with_start(&model, &cfg.solver, start.as_deref())?;
    timings.solve_s = secs(t);
    let x = match res.status {
        SolveStatus::InfeasibleProven => return Err(PipelineError::Infeasible),
        SolveStatus::NoSolutionTimeLimit => return Err(PipelineError::NoSolution(cfg.solver.time_limit_s)),
        SolveStatus::Unbounded => return Err(PipelineError::Unbounded),
        SolveStatus::Optimal | SolveStatus::FeasibleTimeLimit => res.incumbent.clone().expect("status has a solution"),
    };
    let objective = res.objective.unwrap_or_else(|| model.objective_value(&x));

    let t = Instant::now();
    let decode = decode_solution(&model, &x)?;
    let arranger = Arranger::new(field, &catalog, cfg.scale);
    let cycle = arranger.assemble(&decode, cfg.arrange)?;
    let crossings = detect_crossings(&cycle);
    timings.arrange_s = secs(t);
    if !crossings.is_empty() {
        log::warn!("{} crossing or double-node conflicts", crossings.len());
    }
    timings.total_s = secs(t_all);

    let report = RunReport {
        status: res.status,
        scale: cfg.scale,
        delta: cfg.delta,
        k_c: cfg.sampling.k_c,
        k: samples.len(),
        struts: decode.total_struts(),
        objective,
        bound: res.best_bound,
        gap: res.gap,
        nodes_explored: res.nodes_explored,
        warm_started: start.is_some(),
        total_cost: cycle.total_cost,
        crossings: crossings.len(),
        timings,
    };
    let solution = build_solution(&report, &catalog, &samples, &decode, &cycle, &crossings);
    let out = PipelineOutput {
        report,
        solution,
        catalog,
        contour,
        samples,
        model,
        assignment: x,
        decode,
        cycle,
        crossings,
    };
    validate_output(&out, field)?;
    Ok(out)
}

fn build_solution(
    report: &RunReport,
    catalog: &StrutCatalog,
    samples: &[[f64; 2]],
    decode: &SolutionDecode,
    cycle: &ZomeCycle,
    crossings: &[Crossing],
) -> Solution {
    let k = decode.nodes.len();
    Solution {
        status: report.status,
        objective: report.objective,
        bound: report.bound,
        gap: report.gap,
        scale: report.scale,
        delta: report.delta,
        samples: samples.to_vec(),
        shift: decode.shift,
        nodes: (0..k).map(|i| NodeRecord { lifted: decode.nodes[i].lifted, position: decode.node_position(i) }).collect(),
        segments: cycle
            .segments
            .iter()
            .enumerate()
            .map(|(i, seg)| SegmentRecord {
                from: i,
                to: (i + 1) % k,
                struts: seg
                    .iter()
                    .map(|p| StrutRecord {
                        label: catalog.types[p.strut.type_index].label(),
                        column: p.strut.column,
                        sign: p.strut.sign.factor(),
                        start: p.start,
                        end: p.end,
                        cost: p.cost,
                    })
                    .collect(),
                cost: seg.iter().map(|p| p.cost).sum(),
            })
            .collect(),
        total_cost: cycle.total_cost,
        crossings: crossings.to_vec(),
    }
}

/// Re-checks a pipeline result from scratch: model rows, the exact node
/// chain, box membership, budgets, strut placement and costs, and the gap.
pub fn validate_output(out: &PipelineOutput, field: &DistanceField) -> Result<(), PipelineError> {
    let fail = |m: String| Err(PipelineError::Validation(m));
    let Layout::Path(lay) = &out.model.layout else {
        return fail("model has no path layout".into());
    };
    out.model.check_assignment(&out.assignment, CHECK_TOL).map_err(|e| PipelineError::Validation(e.to_string()))?;
    let again = decode_solution(&out.model, &out.assignment).map_err(|e| PipelineError::Validation(e.to_string()))?;
    if again != out.decode {
        return fail("decoded chain differs from the reported one".into());
    }
    let d = &out.decode;
    for (i, c) in lay.samples.iter().enumerate() {
        let p = d.node_position(i);
        let hw = lay.box_half_width(i) + CHECK_TOL;
        if (p[0] - c[0]).abs() > hw || (p[1] - c[1]).abs() > hw {
            return fail(format!("node {i} at {p:?} is outside the box around {c:?}"));
        }
    }
    for (t, used) in d.type_usage() {
        if let Some(b) = out.catalog.types[t].budget {
            if used > b {
                return fail(format!("{} used {used} times, budget {b}", out.catalog.types[t].label()));
            }
        }
    }

    // struts must chain node to node, and costs must match a fresh evaluation
    let k = d.nodes.len();
    let mut total = 0.0;
    for (i, seg) in out.cycle.segments.iter().enumerate() {
        let mut at = d.nodes[i];
        for p in seg {
            let next = at.checked_add(&out.catalog.lifted(&p.strut)).map_err(|e| PipelineError::Validation(e.to_string()))?;
            let a = plane(d.shift, at.project());
            let b = plane(d.shift, next.project());
            if a != p.start || b != p.end {
                return fail(format!("strut in segment {i} is not where the chain puts it"));
            }
            let s = out.report.scale;
            let c = strut_cost(field, [a[0] * s, a[1] * s], [b[0] * s, b[1] * s]);
            if (c - p.cost).abs() > COST_TOL {
                return fail(format!("strut cost {} recomputes to {c}", p.cost));
            }
            total += c;
            at = next;
        }
        if at != d.nodes[(i + 1) % k] {
            return fail(format!("segment {i} does not end on node {}", (i + 1) % k));
        }
    }
    if (total - out.report.total_cost).abs() > COST_TOL * total.abs().max(1.0) {
        return fail(format!("total cost {} recomputes to {total}", out.report.total_cost));
    }
    if out.report.struts as f64 != out.report.objective || out.cycle.num_struts() as u64 != out.report.struts {
        return fail("strut count disagrees with the objective".into());
    }
    let g = gap(out.report.objective, out.report.bound);
    if !(g.is_finite() && g >= -COST_TOL && g == out.report.gap) {
        return fail(format!("gap {} should be {g}", out.report.gap));
    }
    Ok(())
}

fn plane(shift: [f64; 2], q: [f64; 2]) -> [f64; 2] {
    [q[0] + shift[0], q[1] + shift[1]]
}
