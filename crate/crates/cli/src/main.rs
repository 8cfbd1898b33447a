//! `zome`: approximate a shape contour with Zome struts, solve point and
//! path instances, or generate hard instances.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};
use thiserror::Error;

use zome_core::arrange::{ArrangeMode, PlacedStrut, ZomeCycle};
use zome_core::field::{load_field, ContourPolyline, FieldError};
use zome_core::golden::StrutCatalog;
use zome_core::hardness::{self, HardnessError, ReductionKind};
use zome_core::instance::{parse_budgets, Instance, InstanceError, Source};
use zome_core::model::{decode_dpc, decode_solution, Layout, MipModel, ModelError};
use zome_core::pipeline::{run_pipeline, PipelineError, RunConfig};
use zome_core::sampling::{SamplingConfig, SamplingError, Scheme};
use zome_core::solve::{solve_with_start, SolveConfig, SolveError, SolveResult, SolveStatus};
use zome_core::start::{heuristic_start, DEFAULT_EXPANSIONS};
use zome_core::svg::Scene;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Dcas,
    Dpc,
    DpcShortest,
    HardnessGen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Partition,
    ThreePartition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reduction {
    Dpc,
    Dpas,
    Dcas,
}

#[derive(Debug, Parser)]
#[command(name = "zome", version, about = "Approximate planar contours with Zometool struts")]
struct Args {
    #[arg(long, value_enum, default_value = "dcas")]
    mode: Mode,
    /// Distance field (DFIELD) or instance JSON.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Field units per plane unit.
    #[arg(long, default_value_t = 2.0)]
    scale: f64,
    /// Half-width of the box around each sample, in plane units.
    #[arg(long, default_value_t = 4.0)]
    delta: f64,
    #[arg(long, default_value_t = 35)]
    kc: usize,
    #[arg(long, default_value_t = 150)]
    kmax: usize,
    /// Curvature offset in contour vertices.
    #[arg(long, default_value_t = 5)]
    t: usize,
    /// Samples for schemes 1, 2a, 2b and 2c.
    #[arg(long, default_value_t = 35)]
    k: usize,
    /// 1, 2a, 2b, 2c, 3a or 3b.
    #[arg(long, default_value = "3b")]
    sampling: String,
    /// Curvature separation radius; defaults to three long blue struts.
    #[arg(long)]
    separation: Option<f64>,
    /// Stop inserting samples below this distance; defaults to half the separation.
    #[arg(long)]
    insert_threshold: Option<f64>,
    #[arg(long, default_value_t = 900.0)]
    time_limit: f64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// exact, greedy or auto.
    #[arg(long, default_value = "auto")]
    arrange: String,
    /// Replace SOS-1 pairs by big-M indicator rows.
    #[arg(long)]
    no_sos1: bool,
    #[arg(long)]
    no_warm_start: bool,
    #[arg(long)]
    out_json: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
    #[arg(long)]
    out_tikz: Option<PathBuf>,
    #[arg(long)]
    out_report: Option<PathBuf>,
    /// JSON object from strut label to count.
    #[arg(long)]
    budgets: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "partition")]
    problem: Problem,
    /// Partition: count of numbers. 3-Partition: number of triples.
    #[arg(long, default_value_t = 6)]
    size: usize,
    /// Partition: largest number. 3-Partition: triple sum.
    #[arg(long, default_value_t = 20)]
    target: u64,
    #[arg(long, value_enum, default_value = "dpc")]
    reduction: Reduction,
    /// 3-Partition: draw numbers built from triples, so the answer is yes.
    #[arg(long)]
    planted: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Hardness(#[from] HardnessError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Pipeline(PipelineError),
    #[error("infeasible: no strut assembly satisfies the instance")]
    Infeasible,
    #[error("no good solution exists within the current model parameters (time limit {0} s)")]
    NoSolution(f64),
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Field(e) => CliError::Field(e),
            PipelineError::Sampling(e) => CliError::Sampling(e),
            PipelineError::Instance(e) => CliError::Instance(e),
            PipelineError::Config(m) => CliError::Usage(m),
            PipelineError::Infeasible => CliError::Infeasible,
            PipelineError::NoSolution(t) => CliError::NoSolution(t),
            other => CliError::Pipeline(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Infeasible => 2,
            CliError::NoSolution(_) => 3,
            CliError::Usage(_)
            | CliError::Io { .. }
            | CliError::Field(_)
            | CliError::Instance(_)
            | CliError::Sampling(_)
            | CliError::Hardness(_)
            | CliError::Solve(SolveError::Config(_)) => 4,
            _ => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, s: &str) -> Result<(), CliError> {
    fs::write(path, s).map_err(|source| CliError::Io { path: path.into(), source })
}

impl Args {
    fn input(&self) -> Result<&Path, CliError> {
        self.input.as_deref().ok_or_else(|| CliError::Usage(format!("--input is required for {:?} mode", self.mode)))
    }

    fn budgets(&self) -> Result<BTreeMap<String, u64>, CliError> {
        match &self.budgets {
            Some(p) => Ok(parse_budgets(&read(p)?)?),
            None => Ok(BTreeMap::new()),
        }
    }

    fn solver(&self) -> SolveConfig {
        SolveConfig {
            time_limit_s: self.time_limit,
            threads: self.threads,
            rng_seed: self.seed,
            sos_big_m: self.no_sos1,
            ..SolveConfig::default()
        }
    }

    fn run_config(&self) -> Result<RunConfig, CliError> {
        let scheme: Scheme = self.sampling.parse()?;
        let defaults = SamplingConfig::default();
        let separation = self.separation.unwrap_or(defaults.separation);
        let arrange: ArrangeMode = self.arrange.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        Ok(RunConfig {
            scale: self.scale,
            delta: self.delta,
            sampling: SamplingConfig {
                scheme,
                t: self.t,
                k: self.k,
                k_c: self.kc,
                k_max: self.kmax,
                separation,
                min_insert_dist: self.insert_threshold.unwrap_or(0.5 * separation),
                ..defaults
            },
            solver: self.solver(),
            arrange,
            use_sos1: true,
            budgets: self.budgets()?,
            warm_start: !self.no_warm_start,
        })
    }
}

fn run(args: &Args) -> Result<(), CliError> {
    match args.mode {
        Mode::HardnessGen => generate(args),
        Mode::Dcas => {
            let path = args.input()?;
            let text = fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
            if text.first().is_some_and(|&b| b == b'{') {
                let inst = Instance::from_json(&String::from_utf8_lossy(&text))?;
                if inst.kind == ReductionKind::Dpc {
                    return Err(CliError::Usage("dpc instance given to dcas mode; use --mode dpc".into()));
                }
                solve_instance(args, inst, false)
            } else {
                run_field(args, &text)
            }
        }
        Mode::Dpc | Mode::DpcShortest => {
            let inst = Instance::from_json(&read(args.input()?)?)?;
            if inst.kind != ReductionKind::Dpc {
                return Err(CliError::Usage(format!("{:?} mode needs a dpc instance", args.mode)));
            }
            solve_instance(args, inst, args.mode == Mode::DpcShortest)
        }
    }
}

fn run_field(args: &Args, bytes: &[u8]) -> Result<(), CliError> {
    let cfg = args.run_config()?;
    let field = load_field(bytes)?;
    let out = run_pipeline(&field, &cfg)?;
    println!("{}", out.report.summary());
    if let Some(p) = &args.out_json {
        write(p, &out.solution.to_json())?;
    }
    if let Some(p) = &args.out_report {
        write(p, &serde_json::to_string_pretty(&out.report).expect("report serializes"))?;
    }
    if let Some(p) = &args.out_svg {
        write(p, &out.scene().to_svg())?;
    }
    if let Some(p) = &args.out_tikz {
        write(p, &out.scene().to_tikz())?;
    }
    Ok(())
}

fn status_error(res: &SolveResult, time_limit: f64) -> Option<CliError> {
    match res.status {
        SolveStatus::InfeasibleProven => Some(CliError::Infeasible),
        SolveStatus::NoSolutionTimeLimit => Some(CliError::NoSolution(time_limit)),
        SolveStatus::Unbounded => Some(CliError::Pipeline(PipelineError::Unbounded)),
        SolveStatus::Optimal | SolveStatus::FeasibleTimeLimit => None,
    }
}

fn solve_instance(args: &Args, mut inst: Instance, shortest: bool) -> Result<(), CliError> {
    inst.budgets.extend(args.budgets()?);
    let model = if shortest { inst.build_shortest_model()? } else { inst.build_model(true)? };
    let start = match (&model.layout, args.no_warm_start) {
        (Layout::Path(_), false) => heuristic_start(&model, DEFAULT_EXPANSIONS),
        _ => None,
    };
    let cfg = args.solver();
    let res = solve_with_start(&model, &cfg, start.as_deref())?;
    let mut doc = json!({
        "status": res.status,
        "objective": res.objective,
        "bound": res.best_bound,
        "gap": res.gap,
        "nodes_explored": res.nodes_explored,
    });
    if let Some(answer) = inst.source.as_ref().map(Source::answer) {
        doc["expected_feasible"] = json!(answer);
    }
    let catalog = inst.catalog()?;
    if let Some(x) = &res.incumbent {
        describe(&mut doc, &model, &catalog, x)?;
    }
    println!("{:?} (objective {}, gap {:.2}%)", res.status, res.objective.map_or("-".into(), |v| v.to_string()), 100.0 * res.gap);
    if let Some(p) = &args.out_json {
        write(p, &serde_json::to_string_pretty(&doc).expect("json serializes"))?;
    }
    if let (Some(x), Layout::Path(lay)) = (&res.incumbent, &model.layout) {
        let cycle = lay_out(&model, &catalog, x)?;
        let contour = ContourPolyline { points: Vec::new(), closed: lay.cyclic };
        let scene = Scene { contour: &contour, samples: &lay.samples, delta: lay.delta, cycle: Some(&cycle), catalog: &catalog };
        if let Some(p) = &args.out_svg {
            write(p, &scene.to_svg())?;
        }
        if let Some(p) = &args.out_tikz {
            write(p, &scene.to_tikz())?;
        }
    }
    match status_error(&res, cfg.time_limit_s) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn strut_json(catalog: &StrutCatalog, uses: &[(zome_core::golden::SignedStrut, u64)]) -> Value {
    uses.iter()
        .map(|(s, n)| {
            json!({
                "label": catalog.types[s.type_index].label(),
                "column": s.column,
                "sign": s.sign.factor(),
                "count": n,
            })
        })
        .collect()
}

fn describe(doc: &mut Value, model: &MipModel, catalog: &StrutCatalog, x: &[f64]) -> Result<(), CliError> {
    match &model.layout {
        Layout::Dpc(_) => {
            let (reached, uses) = decode_dpc(model, x)?;
            doc["reached"] = json!(reached.lifted);
            doc["struts"] = strut_json(catalog, &uses);
        }
        Layout::Path(_) => {
            let d = decode_solution(model, x)?;
            doc["shift"] = json!(d.shift);
            doc["nodes"] = (0..d.nodes.len())
                .map(|i| json!({ "lifted": d.nodes[i].lifted, "position": d.node_position(i) }))
                .collect();
            doc["segments"] = d.segment_struts.iter().map(|u| strut_json(catalog, u)).collect();
        }
        Layout::None => {}
    }
    Ok(())
}

/// Struts of each segment in catalog order; instances carry no field to
/// arrange against.
fn lay_out(model: &MipModel, catalog: &StrutCatalog, x: &[f64]) -> Result<ZomeCycle, CliError> {
    let d = decode_solution(model, x)?;
    let plane = |p: &zome_core::golden::ZomePoint| {
        let q = p.project();
        [q[0] + d.shift[0], q[1] + d.shift[1]]
    };
    let mut segments = Vec::new();
    for (i, uses) in d.segment_struts.iter().enumerate() {
        let mut at = d.nodes[i];
        let mut seg = Vec::new();
        for &(s, n) in uses {
            for _ in 0..n {
                let next = at.checked_add(&catalog.lifted(&s)).map_err(|_| ModelError::Overflow)?;
                seg.push(PlacedStrut { strut: s, start: plane(&at), end: plane(&next), cost: 0.0 });
                at = next;
            }
        }
        segments.push(seg);
    }
    Ok(ZomeCycle { shift: d.shift, segments, total_cost: 0.0 })
}

fn generate(args: &Args) -> Result<(), CliError> {
    let mut rng = StdRng::seed_from_u64(args.seed);
    let inst = match args.problem {
        Problem::Partition => {
            if args.reduction != Reduction::Dpc {
                return Err(CliError::Usage("Partition reduces to dpc".into()));
            }
            // odd totals have no integral target; redraw
            let p = (0..1000)
                .map(|_| hardness::random_partition(&mut rng, args.size, args.target))
                .find(|p| p.a.iter().sum::<u64>() % 2 == 0)
                .ok_or_else(|| CliError::Usage("could not draw an even-sum instance".into()))?;
            let answer = hardness::partition_dp(&p.a);
            Instance::from_reduced(&hardness::reduce_partition_to_dpc(&p)?, Some(Source::partition(&p, answer)))
        }
        Problem::ThreePartition => {
            let p = hardness::random_3partition(&mut rng, args.size, args.target, args.planted).ok_or_else(|| {
                CliError::Usage(format!("no 3-Partition instance with m={} and A={}", args.size, args.target))
            })?;
            let answer = if args.planted { true } else { hardness::oracle_3partition(&p)? };
            let r = match args.reduction {
                Reduction::Dpas => hardness::reduce_3partition_to_dpas(&p)?,
                Reduction::Dcas => hardness::reduce_3partition_to_dcas(&p)?,
                Reduction::Dpc => return Err(CliError::Usage("3-Partition reduces to dpas or dcas".into())),
            };
            Instance::from_reduced(&r, Some(Source::three_partition(&p, answer)))
        }
    };
    let json = inst.to_json();
    match &args.out_json {
        Some(p) => write(p, &json)?,
        None => println!("{json}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
