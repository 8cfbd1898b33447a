use zome_core::field::{ContourPolyline, DistanceField};
use zome_core::golden::{long_blue_length, StrutCatalog};
use zome_core::pipeline::{run_pipeline, RunConfig};
use zome_core::sampling::{SamplingConfig, Scheme};
use zome_core::solve::SolveConfig;
use zome_core::svg::Scene;

fn elements<'a>(doc: &'a roxmltree::Document, tag: &str) -> Vec<roxmltree::Node<'a, 'a>> {
    doc.descendants().filter(|n| n.has_tag_name(tag)).collect()
}

#[test]
fn empty_cycle_draws_contour_and_boxes() {
    let contour = ContourPolyline { points: vec![[0.0, 0.0], [4.0, 0.0], [4.0, 3.0]], closed: true };
    let samples = [[0.0, 0.0], [4.0, 0.0], [4.0, 3.0]];
    let cat = StrutCatalog::standard();
    let scene = Scene { contour: &contour, samples: &samples, delta: 0.5, cycle: None, catalog: &cat };
    let svg = scene.to_svg();
    let doc = roxmltree::Document::parse(&svg).expect("well-formed XML");
    let rects = elements(&doc, "rect");
    assert_eq!(rects.len(), 3);
    assert_eq!(rects[0].attribute("fill"), Some("#999999"));
    assert!(rects[1..].iter().all(|r| r.attribute("fill") == Some("#dddddd")));
    assert!(elements(&doc, "line").is_empty());
    let ids: Vec<_> = doc.descendants().filter_map(|n| n.attribute("id")).collect();
    assert_eq!(ids, ["boxes", "contour", "samples"]);
    assert!(scene.to_tikz().starts_with("\\begin{tikzpicture}"));
}

#[test]
fn square_fixture_draws_four_blue_struts() {
    let h = long_blue_length() / 2.0;
    let f = DistanceField::covering([-3.0, -3.0], [3.0, 3.0], 0.02, |x, y| {
        let (dx, dy) = (x.abs() - h, y.abs() - h);
        dx.max(0.0).hypot(dy.max(0.0)) + dx.max(dy).min(0.0)
    })
    .unwrap();
    let cfg = RunConfig {
        scale: 1.0,
        delta: 0.1,
        sampling: SamplingConfig {
            scheme: Scheme::CurvSepArclenFpi,
            k_c: 4,
            k_max: 4,
            separation: 2.0,
            ..SamplingConfig::default()
        },
        solver: SolveConfig { time_limit_s: 60.0, ..SolveConfig::default() },
        ..RunConfig::default()
    };
    let out = run_pipeline(&f, &cfg).unwrap();
    let svg = out.scene().to_svg();
    let doc = roxmltree::Document::parse(&svg).expect("well-formed XML");
    let lines = elements(&doc, "line");
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.attribute("stroke") == Some("#1f5fbf")));
    let tikz = out.scene().to_tikz();
    assert_eq!(tikz.matches("\\draw[blue, thick]").count(), 4);
}
