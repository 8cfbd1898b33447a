//! Distance fields on a regular grid and zero-level contour extraction.
//!
//! File format (`DFIELD v1`):
//!
//! ```text
//! DFIELD v1
//! <width> <height> <cell_size> <origin_x> <origin_y>
//! text | binary
//! <width * height values, row-major, bottom row first>
//! ```
//!
//! In `text` mode the values are whitespace separated decimals. In `binary`
//! mode the third line is followed directly by `width * height` little-endian
//! IEEE-754 doubles. The origin is the center of cell (0, 0); cell `(i, j)` is
//! centered at `origin + (i, j) * cell_size`. Negative values are inside.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("expected {expected} values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("bad value {0:?}")]
    BadValue(String),
    #[error("no zero crossing")]
    NoZeroCrossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Text,
    Binary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceField {
    pub width: usize,
    pub height: usize,
    pub cell_size: f64,
    pub origin: [f64; 2],
    pub values: Vec<f64>,
}

/// Points sampled along a contour. When `closed`, the last point connects
/// back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourPolyline {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

impl DistanceField {
    pub fn new(
        width: usize,
        height: usize,
        cell_size: f64,
        origin: [f64; 2],
        values: Vec<f64>,
    ) -> Result<Self, FieldError> {
        if width == 0 || height == 0 {
            return Err(FieldError::Header("width and height must be positive".into()));
        }
        if !(cell_size.is_finite() && cell_size > 0.0) {
            return Err(FieldError::Header("cell size must be positive".into()));
        }
        if !(origin[0].is_finite() && origin[1].is_finite()) {
            return Err(FieldError::Header("origin must be finite".into()));
        }
        if values.len() != width * height {
            return Err(FieldError::DimensionMismatch { expected: width * height, found: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(FieldError::NonFinite(i));
        }
        Ok(DistanceField { width, height, cell_size, origin, values })
    }

    /// Samples `f` at every cell center.
    pub fn from_fn(
        width: usize,
        height: usize,
        cell_size: f64,
        origin: [f64; 2],
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self, FieldError> {
        let mut values = Vec::with_capacity(width * height);
        for j in 0..height {
            for i in 0..width {
                let x = origin[0] + i as f64 * cell_size;
                let y = origin[1] + j as f64 * cell_size;
                values.push(f(x, y));
            }
        }
        Self::new(width, height, cell_size, origin, values)
    }

    /// A grid that covers `[lo, hi]` with cells of the given size.
    pub fn covering(lo: [f64; 2], hi: [f64; 2], cell_size: f64, f: impl Fn(f64, f64) -> f64) -> Result<Self, FieldError> {
        let w = ((hi[0] - lo[0]) / cell_size).ceil().max(1.0) as usize;
        let h = ((hi[1] - lo[1]) / cell_size).ceil().max(1.0) as usize;
        let origin = [lo[0] + 0.5 * cell_size, lo[1] + 0.5 * cell_size];
        Self::from_fn(w, h, cell_size, origin, f)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.width + i]
    }

    pub fn cell_center(&self, i: usize, j: usize) -> [f64; 2] {
        [self.origin[0] + i as f64 * self.cell_size, self.origin[1] + j as f64 * self.cell_size]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Outer edges of the covered rectangle.
    pub fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let h = 0.5 * self.cell_size;
        let lo = [self.origin[0] - h, self.origin[1] - h];
        let hi = [
            self.origin[0] + (self.width as f64 - 0.5) * self.cell_size,
            self.origin[1] + (self.height as f64 - 0.5) * self.cell_size,
        ];
        (lo, hi)
    }

    /// Cell index along one axis; a point on a shared border belongs to the
    /// lower cell.
    fn axis_index(&self, coord: f64, origin: f64) -> i64 {
        let u = (coord - origin) / self.cell_size + 0.5;
        u.ceil() as i64 - 1
    }

    /// Value of the cell containing `p`. Outside the grid, the closest cell's
    /// value times 100.
    pub fn sample_distance(&self, p: [f64; 2]) -> f64 {
        let i = self.axis_index(p[0], self.origin[0]);
        let j = self.axis_index(p[1], self.origin[1]);
        let inside = (0..self.width as i64).contains(&i) && (0..self.height as i64).contains(&j);
        let ci = i.clamp(0, self.width as i64 - 1) as usize;
        let cj = j.clamp(0, self.height as i64 - 1) as usize;
        let v = self.value(ci, cj);
        if inside {
            v
        } else {
            v * 100.0
        }
    }

    pub fn write(&self, out: &mut impl Write, encoding: Encoding) -> std::io::Result<()> {
        writeln!(out, "DFIELD v1")?;
        writeln!(
            out,
            "{} {} {:?} {:?} {:?}",
            self.width, self.height, self.cell_size, self.origin[0], self.origin[1]
        )?;
        match encoding {
            Encoding::Text => {
                writeln!(out, "text")?;
                for row in self.values.chunks(self.width) {
                    let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
                    writeln!(out, "{}", line.join(" "))?;
                }
            }
            Encoding::Binary => {
                writeln!(out, "binary")?;
                for v in &self.values {
                    out.write_all(&v.to_le_bytes())?;
                }
            }
        }
        Ok(())
    }

    /// Value at a marching-squares grid node. Nodes are cell centers; the
    /// ring of nodes just outside the grid reads as positive so every
    /// contour closes.
    fn node_value(&self, gx: i64, gy: i64, pad: f64) -> f64 {
        if gx < 0 || gy < 0 || gx >= self.width as i64 || gy >= self.height as i64 {
            pad
        } else {
            self.value(gx as usize, gy as usize)
        }
    }

    fn node_pos(&self, gx: i64, gy: i64) -> [f64; 2] {
        [self.origin[0] + gx as f64 * self.cell_size, self.origin[1] + gy as f64 * self.cell_size]
    }
}

pub fn load_field(source: impl Read) -> Result<DistanceField, FieldError> {
    let mut r = BufReader::new(source);
    let mut line = String::new();
    r.read_line(&mut line)?;
    if line.trim() != "DFIELD v1" {
        return Err(FieldError::Header(format!("expected 'DFIELD v1', got {:?}", line.trim())));
    }
    line.clear();
    r.read_line(&mut line)?;
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 5 {
        return Err(FieldError::Header(format!("expected 5 header fields, got {}", parts.len())));
    }
    let width: usize = parts[0].parse().map_err(|_| FieldError::Header(format!("bad width {:?}", parts[0])))?;
    let height: usize = parts[1].parse().map_err(|_| FieldError::Header(format!("bad height {:?}", parts[1])))?;
    let mut nums = [0.0f64; 3];
    for (n, s) in nums.iter_mut().zip(&parts[2..]) {
        *n = s.parse().map_err(|_| FieldError::Header(format!("bad number {s:?}")))?;
    }
    line.clear();
    r.read_line(&mut line)?;
    let n = width
        .checked_mul(height)
        .ok_or_else(|| FieldError::Header("grid too large".into()))?;
    let values = match line.trim() {
        "text" => {
            let mut rest = String::new();
            r.read_to_string(&mut rest)?;
            rest.split_whitespace()
                .map(|s| s.parse::<f64>().map_err(|_| FieldError::BadValue(s.to_string())))
                .collect::<Result<Vec<_>, _>>()?
        }
        "binary" => {
            let mut bytes = Vec::new();
            r.read_to_end(&mut bytes)?;
            if bytes.len() % 8 != 0 {
                return Err(FieldError::DimensionMismatch { expected: n * 8, found: bytes.len() });
            }
            bytes
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
                .collect()
        }
        other => return Err(FieldError::Header(format!("unknown encoding {other:?}"))),
    };
    DistanceField::new(width, height, nums[0], [nums[1], nums[2]], values)
}

impl ContourPolyline {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Length of the edge leaving vertex `i` (wrapping when closed).
    pub fn edge_length(&self, i: usize) -> f64 {
        let n = self.points.len();
        let a = self.points[i];
        let b = self.points[(i + 1) % n];
        (b[0] - a[0]).hypot(b[1] - a[1])
    }

    /// Shoelace area; positive for counter-clockwise loops.
    pub fn signed_area(&self) -> f64 {
        let n = self.points.len();
        let mut s = 0.0;
        for i in 0..n {
            let a = self.points[i];
            let b = self.points[(i + 1) % n];
            s += a[0] * b[1] - b[0] * a[1];
        }
        0.5 * s
    }

    /// Cumulative arclength at each vertex, starting at 0.
    pub fn cumulative(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.points.len());
        let mut acc = 0.0;
        for i in 0..self.points.len() {
            out.push(acc);
            if i + 1 < self.points.len() {
                acc += self.edge_length(i);
            }
        }
        out
    }
}

pub fn arclength(c: &ContourPolyline) -> f64 {
    let n = c.points.len();
    if n < 2 {
        return 0.0;
    }
    let open: f64 = (0..n - 1).map(|i| c.edge_length(i)).sum();
    if c.closed {
        open + c.edge_length(n - 1)
    } else {
        open
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum GridEdge {
    /// Between nodes (gx, gy) and (gx + 1, gy).
    H(i64, i64),
    /// Between nodes (gx, gy) and (gx, gy + 1).
    V(i64, i64),
}

/// All closed zero-level loops, each counter-clockwise around its inside
/// region. Saddle cells are split according to the sign of the cell average.
pub fn extract_contours(field: &DistanceField) -> Result<Vec<ContourPolyline>, FieldError> {
    let has_inside = field.values.iter().any(|&v| v < 0.0);
    let has_outside = field.values.iter().any(|&v| v >= 0.0);
    if !(has_inside && has_outside) {
        return Err(FieldError::NoZeroCrossing);
    }
    let pad = field.cell_size.max(field.max_value().abs()).max(1e-300);
    let inside = |v: f64| v < 0.0;
    let w = field.width as i64;
    let h = field.height as i64;

    let mut next: HashMap<GridEdge, GridEdge> = HashMap::new();
    let mut order: Vec<GridEdge> = Vec::new();
    for gy in -1..h {
        for gx in -1..w {
            let c = [(gx, gy), (gx + 1, gy), (gx + 1, gy + 1), (gx, gy + 1)];
            let v = c.map(|(x, y)| field.node_value(x, y, pad));
            let ins = v.map(inside);
            if ins.iter().all(|&b| b) || ins.iter().all(|&b| !b) {
                continue;
            }
            let edges = [GridEdge::H(gx, gy), GridEdge::V(gx + 1, gy), GridEdge::H(gx, gy + 1), GridEdge::V(gx, gy)];
            let mut exits = Vec::with_capacity(2);
            let mut entries = Vec::with_capacity(2);
            for k in 0..4 {
                let (a, b) = (ins[k], ins[(k + 1) % 4]);
                if a && !b {
                    exits.push(k);
                } else if !a && b {
                    entries.push(k);
                }
            }
            let pairs: Vec<(usize, usize)> = if exits.len() == 1 {
                vec![(exits[0], entries[0])]
            } else {
                let avg = (v[0] + v[1] + v[2] + v[3]) / 4.0;
                let connect_inside = inside(avg);
                exits
                    .iter()
                    .map(|&e| {
                        let pick = if connect_inside {
                            // next entry going counter-clockwise
                            (1..4).map(|d| (e + d) % 4).find(|k| entries.contains(k))
                        } else {
                            (1..4).map(|d| (e + 4 - d) % 4).find(|k| entries.contains(k))
                        };
                        (e, pick.expect("saddle has two entries"))
                    })
                    .collect()
            };
            for (e, n) in pairs {
                next.insert(edges[e], edges[n]);
                order.push(edges[e]);
            }
        }
    }

    let point = |e: GridEdge| -> [f64; 2] {
        let (a, b) = match e {
            GridEdge::H(x, y) => ((x, y), (x + 1, y)),
            GridEdge::V(x, y) => ((x, y), (x, y + 1)),
        };
        let va = field.node_value(a.0, a.1, pad);
        let vb = field.node_value(b.0, b.1, pad);
        let t = va / (va - vb);
        let pa = field.node_pos(a.0, a.1);
        let pb = field.node_pos(b.0, b.1);
        [pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]
    };

    let mut loops = Vec::new();
    let mut used: HashMap<GridEdge, ()> = HashMap::new();
    for start in order {
        if used.contains_key(&start) {
            continue;
        }
        let mut pts: Vec<[f64; 2]> = Vec::new();
        let mut e = start;
        loop {
            used.insert(e, ());
            let p = point(e);
            if pts.last() != Some(&p) {
                pts.push(p);
            }
            e = next[&e];
            if e == start {
                break;
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        if pts.len() >= 3 {
            loops.push(ContourPolyline { points: pts, closed: true });
        }
    }
    if loops.is_empty() {
        return Err(FieldError::NoZeroCrossing);
    }
    Ok(loops)
}

/// The single closed zero-level loop of the field. When several loops exist
/// the longest is returned and a warning is logged.
pub fn extract_contour(field: &DistanceField) -> Result<ContourPolyline, FieldError> {
    let mut loops = extract_contours(field)?;
    if loops.len() > 1 {
        log::warn!("field has {} contour components; keeping the longest", loops.len());
    }
    let best = loops
        .iter()
        .enumerate()
        .max_by(|a, b| arclength(a.1).total_cmp(&arclength(b.1)).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i)
        .expect("non-empty");
    Ok(loops.swap_remove(best))
}
