use zome_core::arrange::ArrangeMode;
use zome_core::field::{DistanceField, FieldError};
use zome_core::golden::{long_blue_length, StrutCatalog};
use zome_core::model::{build_path_model, PathOptions};
use zome_core::pipeline::{run_pipeline, PipelineError, RunConfig};
use zome_core::sampling::{SamplingConfig, Scheme};
use zome_core::solve::{SolveConfig, SolveStatus};
use zome_core::start::{heuristic_start, DEFAULT_EXPANSIONS};

fn square_field() -> DistanceField {
    let h = long_blue_length() / 2.0;
    DistanceField::covering([-3.0, -3.0], [3.0, 3.0], 0.02, |x, y| {
        let (dx, dy) = (x.abs() - h, y.abs() - h);
        dx.max(0.0).hypot(dy.max(0.0)) + dx.max(dy).min(0.0)
    })
    .unwrap()
}

fn square_config() -> RunConfig {
    RunConfig {
        scale: 1.0,
        delta: 0.1,
        sampling: SamplingConfig {
            scheme: Scheme::CurvSepArclenFpi,
            k_c: 4,
            k_max: 4,
            separation: 2.0,
            min_insert_dist: 1.0,
            ..SamplingConfig::default()
        },
        solver: SolveConfig { time_limit_s: 60.0, ..SolveConfig::default() },
        ..RunConfig::default()
    }
}

#[test]
fn square_fixture_is_solved_exactly() {
    let out = run_pipeline(&square_field(), &square_config()).unwrap();
    assert_eq!(out.report.k, 4);
    assert_eq!(out.report.status, SolveStatus::Optimal);
    assert_eq!(out.report.objective, 4.0);
    assert_eq!(out.report.gap, 0.0);
    assert!(out.crossings.is_empty());
    let blue_long = StrutCatalog::standard().find_label("blue-long").unwrap();
    assert!(out.decode.segment_struts.iter().all(|s| s.len() == 1 && s[0].0.type_index == blue_long && s[0].1 == 1));
    assert!(out.report.summary().ends_with("(4 struts, MIP gap 0.00%)"), "{}", out.report.summary());
}

#[test]
fn no_warm_start_gives_the_same_objective() {
    let cfg = RunConfig { warm_start: false, ..square_config() };
    let out = run_pipeline(&square_field(), &cfg).unwrap();
    assert!(!out.report.warm_started);
    assert_eq!(out.report.objective, 4.0);
}

#[test]
fn positive_field_has_no_contour() {
    let f = DistanceField::new(4, 4, 1.0, [0.0, 0.0], vec![1.0; 16]).unwrap();
    let err = run_pipeline(&f, &RunConfig::default()).unwrap_err();
    assert!(matches!(err, PipelineError::Field(FieldError::NoZeroCrossing)));
    assert!(err.to_string().contains("no zero crossing"));
}

#[test]
fn bad_config_is_rejected() {
    let cfg = RunConfig { scale: 0.0, ..RunConfig::default() };
    assert!(matches!(run_pipeline(&square_field(), &cfg), Err(PipelineError::Config(_))));
}

#[test]
fn budgets_can_make_the_square_infeasible() {
    let mut cfg = square_config();
    for label in ["blue-short", "blue-medium", "blue-long", "red-short", "red-medium", "red-long"] {
        cfg.budgets.insert(label.into(), 0);
    }
    for label in ["yellow-short", "yellow-medium", "yellow-long"] {
        cfg.budgets.insert(label.into(), 1);
    }
    // three struts cannot close a cycle through four disjoint boxes
    assert!(matches!(run_pipeline(&square_field(), &cfg), Err(PipelineError::Infeasible)));
}

#[test]
fn circle_with_defaults() {
    let f = DistanceField::covering([-50.0, -50.0], [50.0, 50.0], 0.5, |x, y| x.hypot(y) - 40.0).unwrap();
    let cfg = RunConfig { solver: SolveConfig { time_limit_s: 60.0, ..SolveConfig::default() }, ..RunConfig::default() };
    let out = run_pipeline(&f, &cfg).unwrap();
    assert!(out.report.status.has_solution());
    for (i, c) in out.samples.iter().enumerate() {
        let p = out.decode.node_position(i);
        assert!((p[0] - c[0]).abs() <= cfg.delta + 1e-6 && (p[1] - c[1]).abs() <= cfg.delta + 1e-6);
    }
    assert!(out.report.gap.is_finite());
}

#[test]
fn greedy_arrangement_is_never_cheaper() {
    let f = DistanceField::covering([-30.0, -30.0], [30.0, 30.0], 0.5, |x, y| x.hypot(y) - 20.0).unwrap();
    let base = RunConfig { solver: SolveConfig { time_limit_s: 20.0, ..SolveConfig::default() }, ..RunConfig::default() };
    let exact = run_pipeline(&f, &RunConfig { arrange: ArrangeMode::Auto, ..base.clone() }).unwrap();
    let mut greedy_cfg = base;
    greedy_cfg.arrange = ArrangeMode::Greedy;
    let greedy = run_pipeline(&f, &greedy_cfg).unwrap();
    if greedy.decode == exact.decode {
        assert!(greedy.report.total_cost >= exact.report.total_cost - 1e-9);
    }
}

#[test]
fn warm_start_on_a_ring_of_samples() {
    let cat = StrutCatalog::standard();
    let samples: Vec<[f64; 2]> =
        (0..20).map(|i| (i as f64) * std::f64::consts::TAU / 20.0).map(|a| [30.0 * a.cos(), 30.0 * a.sin()]).collect();
    let m = build_path_model(&cat, &samples, 2.0, PathOptions::default()).unwrap();
    let x = heuristic_start(&m, DEFAULT_EXPANSIONS).expect("start found");
    m.check_assignment(&x, 1e-7).unwrap();
}
