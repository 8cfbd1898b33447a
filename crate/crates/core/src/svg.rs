//! SVG and TikZ renderings of a solution.
//!
//! Layers from bottom to top: grey δ-boxes around the samples (the first
//! sample's box darker), the black input contour, the green polyline through
//! the samples, and the struts in their colors.

use std::fmt::Write as _;

use crate::arrange::ZomeCycle;
use crate::field::ContourPolyline;
use crate::golden::{StrutCatalog, StrutColor};

/// What to draw. All coordinates are plane coordinates.
#[derive(Debug, Clone, Copy)]
pub struct Scene<'a> {
    pub contour: &'a ContourPolyline,
    pub samples: &'a [[f64; 2]],
    pub delta: f64,
    pub cycle: Option<&'a ZomeCycle>,
    pub catalog: &'a StrutCatalog,
}

fn color_hex(c: Option<StrutColor>) -> &'static str {
    match c {
        Some(StrutColor::Blue) => "#1f5fbf",
        Some(StrutColor::Red) => "#d62728",
        Some(StrutColor::Yellow) => "#e3b505",
        None => "#555555",
    }
}

fn color_tikz(c: Option<StrutColor>) -> &'static str {
    match c {
        Some(StrutColor::Blue) => "blue",
        Some(StrutColor::Red) => "red",
        Some(StrutColor::Yellow) => "yellow!80!black",
        None => "gray",
    }
}

impl Scene<'_> {
    fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        let mut add = |p: [f64; 2], r: f64| {
            for a in 0..2 {
                lo[a] = lo[a].min(p[a] - r);
                hi[a] = hi[a].max(p[a] + r);
            }
        };
        for &p in &self.contour.points {
            add(p, 0.0);
        }
        for &p in self.samples {
            add(p, self.delta);
        }
        if let Some(c) = self.cycle {
            for s in c.struts() {
                add(s.start, 0.0);
                add(s.end, 0.0);
            }
        }
        if !lo[0].is_finite() {
            return ([0.0, 0.0], [1.0, 1.0]);
        }
        (lo, hi)
    }

    pub fn to_svg(&self) -> String {
        let (lo, hi) = self.bounds();
        let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let (w, h) = (hi[0] - lo[0] + 2.0 * pad, hi[1] - lo[1] + 2.0 * pad);
        let stroke = 0.004 * w.max(h);
        let mut s = String::new();
        // y grows upwards in the plane, downwards in SVG
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{:.0}">"#,
            lo[0] - pad,
            -hi[1] - pad,
            w,
            h,
            800.0 * h / w
        );
        let _ = writeln!(s, r#"<g transform="scale(1,-1)">"#);
        let _ = writeln!(s, r##"<g id="boxes" stroke="none">"##);
        for (i, p) in self.samples.iter().enumerate() {
            let fill = if i == 0 { "#999999" } else { "#dddddd" };
            let d = self.delta;
            let _ = writeln!(s, r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}"/>"#, p[0] - d, p[1] - d, 2.0 * d, 2.0 * d);
        }
        let _ = writeln!(s, "</g>");
        if !self.contour.points.is_empty() {
            let tag = if self.contour.closed { "polygon" } else { "polyline" };
            let _ = writeln!(
                s,
                r#"<{tag} id="contour" points="{}" fill="none" stroke="black" stroke-width="{stroke}"/>"#,
                points_attr(&self.contour.points)
            );
        }
        if !self.samples.is_empty() {
            let _ = writeln!(
                s,
                r#"<polygon id="samples" points="{}" fill="none" stroke="green" stroke-width="{}"/>"#,
                points_attr(self.samples),
                0.6 * stroke
            );
        }
        if let Some(c) = self.cycle {
            let _ = writeln!(s, r#"<g id="struts" stroke-width="{}" stroke-linecap="round">"#, 2.0 * stroke);
            for p in c.struts() {
                let col = color_hex(self.catalog.types[p.strut.type_index].color());
                let _ = writeln!(
                    s,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{col}"/>"#,
                    p.start[0], p.start[1], p.end[0], p.end[1]
                );
            }
            let _ = writeln!(s, "</g>");
        }
        let _ = writeln!(s, "</g>\n</svg>");
        s
    }

    pub fn to_tikz(&self) -> String {
        let mut s = String::from("\\begin{tikzpicture}\n");
        for (i, p) in self.samples.iter().enumerate() {
            let fill = if i == 0 { "gray!60" } else { "gray!25" };
            let d = self.delta;
            let _ = writeln!(s, "  \\fill[{fill}] ({:.4},{:.4}) rectangle ({:.4},{:.4});", p[0] - d, p[1] - d, p[0] + d, p[1] + d);
        }
        if !self.contour.points.is_empty() {
            let _ = writeln!(s, "  \\draw[black] {};", tikz_path(&self.contour.points, self.contour.closed));
        }
        if !self.samples.is_empty() {
            let _ = writeln!(s, "  \\draw[green!60!black] {};", tikz_path(self.samples, true));
        }
        if let Some(c) = self.cycle {
            for p in c.struts() {
                let col = color_tikz(self.catalog.types[p.strut.type_index].color());
                let _ = writeln!(
                    s,
                    "  \\draw[{col}, thick] ({:.4},{:.4}) -- ({:.4},{:.4});",
                    p.start[0], p.start[1], p.end[0], p.end[1]
                );
            }
        }
        s.push_str("\\end{tikzpicture}\n");
        s
    }
}

fn points_attr(points: &[[f64; 2]]) -> String {
    points.iter().map(|p| format!("{},{}", p[0], p[1])).collect::<Vec<_>>().join(" ")
}

fn tikz_path(points: &[[f64; 2]], closed: bool) -> String {
    let mut out = points.iter().map(|p| format!("({:.4},{:.4})", p[0], p[1])).collect::<Vec<_>>().join(" -- ");
    if closed {
        out.push_str(" -- cycle");
    }
    out
}
