//! Ordering struts within segments to follow the contour.
//!
//! Struts of one segment can be laid out in any order without moving the
//! segment's end node, so each segment is arranged independently to
//! minimize the distance-field cost of its struts.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::DistanceField;
use crate::golden::{SignedStrut, StrutCatalog, ZomePoint};
use crate::model::SolutionDecode;

/// Interior evaluation points per strut in [`strut_cost`].
pub const COST_SAMPLES: usize = 3;
/// Largest segment arranged by enumeration in [`ArrangeMode::Auto`].
pub const ENUMERATION_CAP: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangeError {
    #[error("segment has {size} struts, enumeration cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("unknown arrangement mode {0:?}")]
    UnknownMode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrangeMode {
    Exact,
    Greedy,
    #[default]
    Auto,
}

impl FromStr for ArrangeMode {
    type Err = ArrangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(ArrangeMode::Exact),
            "greedy" => Ok(ArrangeMode::Greedy),
            "auto" => Ok(ArrangeMode::Auto),
            _ => Err(ArrangeError::UnknownMode(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacedStrut {
    pub strut: SignedStrut,
    pub start: [f64; 2],
    pub end: [f64; 2],
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZomeCycle {
    pub shift: [f64; 2],
    pub segments: Vec<Vec<PlacedStrut>>,
    pub total_cost: f64,
}

impl ZomeCycle {
    pub fn num_struts(&self) -> usize {
        self.segments.iter().map(Vec::len).sum()
    }

    pub fn struts(&self) -> impl Iterator<Item = &PlacedStrut> {
        self.segments.iter().flatten()
    }

    /// Sum of strut costs, recomputed in segment order.
    pub fn recompute_cost(&self) -> f64 {
        self.segments.iter().map(|s| s.iter().map(|p| p.cost).sum::<f64>()).sum()
    }
}

/// Averaged area between the strut `p1 → p2` and the zero level:
/// `|p1 − p2| / (k + 2) · Σ_{i=0}^{k+1} |d(p_i)|` at `k + 2` evenly spaced
/// points including both ends. Coordinates are field coordinates.
pub fn strut_cost(field: &DistanceField, p1: [f64; 2], p2: [f64; 2]) -> f64 {
    let k = COST_SAMPLES;
    let len = (p1[0] - p2[0]).hypot(p1[1] - p2[1]);
    let mut sum = 0.0;
    for i in 0..=k + 1 {
        let t = i as f64 / (k + 1) as f64;
        let q = [t * p1[0] + (1.0 - t) * p2[0], t * p1[1] + (1.0 - t) * p2[1]];
        sum += field.sample_distance(q).abs();
    }
    len / (k + 2) as f64 * sum
}

/// Places struts of `catalog` over `field`. Plane coordinates are multiplied
/// by `scale` to get field coordinates.
#[derive(Debug, Clone, Copy)]
pub struct Arranger<'a> {
    pub field: &'a DistanceField,
    pub catalog: &'a StrutCatalog,
    pub scale: f64,
    pub cap: usize,
}

impl<'a> Arranger<'a> {
    pub fn new(field: &'a DistanceField, catalog: &'a StrutCatalog, scale: f64) -> Self {
        Arranger { field, catalog, scale, cap: ENUMERATION_CAP }
    }

    fn plane(&self, shift: [f64; 2], p: &ZomePoint) -> [f64; 2] {
        let q = p.project();
        [q[0] + shift[0], q[1] + shift[1]]
    }

    fn place(&self, shift: [f64; 2], at: &ZomePoint, s: SignedStrut) -> (PlacedStrut, ZomePoint) {
        let next = at.checked_add(&self.catalog.lifted(&s)).expect("lifted coordinates overflow");
        let start = self.plane(shift, at);
        let end = self.plane(shift, &next);
        let sc = self.scale;
        let cost = strut_cost(self.field, [start[0] * sc, start[1] * sc], [end[0] * sc, end[1] * sc]);
        (PlacedStrut { strut: s, start, end, cost }, next)
    }

    /// Lays out `order` as given, starting at lifted node `start`.
    pub fn layout(&self, shift: [f64; 2], start: ZomePoint, order: &[SignedStrut]) -> Vec<PlacedStrut> {
        let mut at = start;
        order
            .iter()
            .map(|&s| {
                let (p, next) = self.place(shift, &at, s);
                at = next;
                p
            })
            .collect()
    }

    /// Minimum-cost ordering of `multiset` by depth-first enumeration of
    /// distinct permutations. A prefix is dropped when its cost reaches the
    /// best complete ordering, or the best cost seen for the same set of used
    /// struts (such prefixes end at the same node). Among equal costs the
    /// lexicographically smallest ordering in catalog order wins.
    pub fn exact(&self, shift: [f64; 2], start: ZomePoint, multiset: &[SignedStrut]) -> Result<Vec<PlacedStrut>, ArrangeError> {
        if multiset.len() > self.cap {
            return Err(ArrangeError::CapExceeded { size: multiset.len(), cap: self.cap });
        }
        let (kinds, counts) = group(multiset);
        // mixed-radix encoding of the used counts
        let mut radix = Vec::with_capacity(counts.len());
        let mut states = 1usize;
        for &c in &counts {
            radix.push(states);
            states *= c + 1;
        }
        let mut search = Search {
            arr: self,
            shift,
            kinds: &kinds,
            radix: &radix,
            remaining: counts.clone(),
            seen: vec![f64::INFINITY; states],
            cost_cache: vec![f64::NAN; states * kinds.len()],
            prefix: Vec::with_capacity(multiset.len()),
            best: Vec::new(),
            best_cost: f64::INFINITY,
        };
        search.dfs(start, 0, 0.0);
        let order: Vec<SignedStrut> = search.best.iter().map(|&k| kinds[k]).collect();
        Ok(self.layout(shift, start, &order))
    }

    /// Repeatedly appends the cheapest remaining strut; ties go to the
    /// earlier strut in catalog order.
    pub fn greedy(&self, shift: [f64; 2], start: ZomePoint, multiset: &[SignedStrut]) -> Vec<PlacedStrut> {
        let (kinds, mut counts) = group(multiset);
        let mut at = start;
        let mut out = Vec::with_capacity(multiset.len());
        for _ in 0..multiset.len() {
            let mut pick: Option<(usize, PlacedStrut, ZomePoint)> = None;
            for (k, &s) in kinds.iter().enumerate() {
                if counts[k] == 0 {
                    continue;
                }
                let (p, next) = self.place(shift, &at, s);
                if pick.as_ref().is_none_or(|b| p.cost < b.1.cost) {
                    pick = Some((k, p, next));
                }
            }
            let (k, p, next) = pick.expect("a strut remains");
            counts[k] -= 1;
            at = next;
            out.push(p);
        }
        out
    }

    pub fn arrange(&self, shift: [f64; 2], start: ZomePoint, multiset: &[SignedStrut], mode: ArrangeMode) -> Result<Vec<PlacedStrut>, ArrangeError> {
        match mode {
            ArrangeMode::Exact => self.exact(shift, start, multiset),
            ArrangeMode::Greedy => Ok(self.greedy(shift, start, multiset)),
            ArrangeMode::Auto if multiset.len() <= self.cap => self.exact(shift, start, multiset),
            ArrangeMode::Auto => {
                log::info!("segment with {} struts exceeds the enumeration cap; arranging greedily", multiset.len());
                Ok(self.greedy(shift, start, multiset))
            }
        }
    }

    /// Arranges every segment of a decoded cycle or path. Segments are
    /// independent and handled in parallel.
    pub fn assemble(&self, decode: &SolutionDecode, mode: ArrangeMode) -> Result<ZomeCycle, ArrangeError> {
        let shift = decode.shift;
        let segments = decode
            .segment_struts
            .par_iter()
            .enumerate()
            .map(|(i, uses)| {
                let multiset: Vec<SignedStrut> = uses.iter().flat_map(|&(s, n)| std::iter::repeat_n(s, n as usize)).collect();
                self.arrange(shift, decode.nodes[i], &multiset, mode)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let total_cost = segments.iter().map(|s| s.iter().map(|p| p.cost).sum::<f64>()).sum();
        Ok(ZomeCycle { shift, segments, total_cost })
    }
}

fn group(multiset: &[SignedStrut]) -> (Vec<SignedStrut>, Vec<usize>) {
    let mut sorted = multiset.to_vec();
    sorted.sort();
    let mut kinds: Vec<SignedStrut> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for s in sorted {
        if kinds.last() == Some(&s) {
            *counts.last_mut().expect("parallel vectors") += 1;
        } else {
            kinds.push(s);
            counts.push(1);
        }
    }
    (kinds, counts)
}

struct Search<'s, 'a> {
    arr: &'s Arranger<'a>,
    shift: [f64; 2],
    kinds: &'s [SignedStrut],
    radix: &'s [usize],
    remaining: Vec<usize>,
    seen: Vec<f64>,
    cost_cache: Vec<f64>,
    prefix: Vec<usize>,
    best: Vec<usize>,
    best_cost: f64,
}

impl Search<'_, '_> {
    fn dfs(&mut self, at: ZomePoint, state: usize, cost: f64) {
        if self.remaining.iter().all(|&c| c == 0) {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = self.prefix.clone();
            }
            return;
        }
        for k in 0..self.kinds.len() {
            if self.remaining[k] == 0 {
                continue;
            }
            let slot = state * self.kinds.len() + k;
            let step = if self.cost_cache[slot].is_nan() {
                let (p, _) = self.arr.place(self.shift, &at, self.kinds[k]);
                self.cost_cache[slot] = p.cost;
                p.cost
            } else {
                self.cost_cache[slot]
            };
            let c = cost + step;
            let next_state = state + self.radix[k];
            if c >= self.best_cost || c >= self.seen[next_state] {
                continue;
            }
            self.seen[next_state] = c;
            let next = at.checked_add(&self.arr.catalog.lifted(&self.kinds[k])).expect("lifted coordinates overflow");
            self.remaining[k] -= 1;
            self.prefix.push(k);
            self.dfs(next, next_state, c);
            self.prefix.pop();
            self.remaining[k] += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossingKind {
    /// Two struts that are not neighbours in the chain intersect.
    Struts,
    /// Two distinct chain positions share a node.
    DoubleNode,
}

/// A conflict between two struts, each given as `(segment, index)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub kind: CrossingKind,
}

const GEOM_EPS: f64 = 1e-9;

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn same_point(a: [f64; 2], b: [f64; 2]) -> bool {
    (a[0] - b[0]).abs() <= GEOM_EPS && (a[1] - b[1]).abs() <= GEOM_EPS
}

/// Whether `p` lies strictly inside segment `a b`.
fn in_open_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> bool {
    let len = (b[0] - a[0]).hypot(b[1] - a[1]);
    if len <= GEOM_EPS || orient(a, b, p).abs() > GEOM_EPS * len {
        return false;
    }
    let t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / (len * len);
    t * len > GEOM_EPS && (1.0 - t) * len > GEOM_EPS
}

/// Whether two segments share a point other than a common endpoint.
fn segments_conflict(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let scale = (b[0] - a[0]).hypot(b[1] - a[1]).max((d[0] - c[0]).hypot(d[1] - c[1])).max(1.0);
    let eps = GEOM_EPS * scale;
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) && ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps)) {
        return true;
    }
    in_open_segment(c, a, b) || in_open_segment(d, a, b) || in_open_segment(a, c, d) || in_open_segment(b, c, d)
        || (same_point(a, c) && same_point(b, d))
        || (same_point(a, d) && same_point(b, c))
}

/// Crossing struts and repeated nodes of a cycle. Neighbouring struts in
/// the closed chain are never reported against each other.
pub fn detect_crossings(cycle: &ZomeCycle) -> Vec<Crossing> {
    let flat: Vec<((usize, usize), &PlacedStrut)> = cycle
        .segments
        .iter()
        .enumerate()
        .flat_map(|(s, seg)| seg.iter().enumerate().map(move |(i, p)| ((s, i), p)))
        .collect();
    let n = flat.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (pa, pb) = (flat[i].1, flat[j].1);
            if !adjacent && segments_conflict(pa.start, pa.end, pb.start, pb.end) {
                out.push(Crossing { first: flat[i].0, second: flat[j].0, kind: CrossingKind::Struts });
            }
            // node `i` is the start of strut `i`
            if n > 1 && same_point(pa.start, pb.start) {
                out.push(Crossing { first: flat[i].0, second: flat[j].0, kind: CrossingKind::DoubleNode });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::Sign;

    fn flat_field(v: f64) -> DistanceField {
        DistanceField::new(40, 40, 1.0, [-20.0, -20.0], vec![v; 1600]).unwrap()
    }

    fn placed(start: [f64; 2], end: [f64; 2]) -> PlacedStrut {
        PlacedStrut { strut: SignedStrut { type_index: 0, column: 0, sign: Sign::Plus }, start, end, cost: 0.0 }
    }

    #[test]
    fn cost_examples() {
        assert_eq!(strut_cost(&flat_field(0.0), [0.0, 0.0], [3.0, 4.0]), 0.0);
        assert!((strut_cost(&flat_field(1.0), [0.0, 0.0], [3.0, 4.0]) - 5.0).abs() < 1e-12);
        // three of five samples beyond the right edge of a 0.1 field
        let f = DistanceField::new(4, 1, 1.0, [0.0, 0.0], vec![0.1; 4]).unwrap();
        let c = strut_cost(&f, [2.0, 0.0], [6.0, 0.0]);
        let want = 4.0 / 5.0 * (0.1 + 0.1 + 10.0 + 10.0 + 10.0);
        assert!((c - want).abs() < 1e-12, "{c} vs {want}");
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exact".parse::<ArrangeMode>().unwrap(), ArrangeMode::Exact);
        assert!("best".parse::<ArrangeMode>().is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let f = flat_field(1.0);
        let cat = StrutCatalog::standard();
        let mut a = Arranger::new(&f, &cat, 1.0);
        a.cap = 2;
        let s = SignedStrut { type_index: 0, column: 0, sign: Sign::Plus };
        let err = a.exact([0.0, 0.0], ZomePoint::ORIGIN, &[s, s, s]).unwrap_err();
        assert_eq!(err, ArrangeError::CapExceeded { size: 3, cap: 2 });
    }

    #[test]
    fn crossing_primitives() {
        let c = ZomeCycle {
            shift: [0.0, 0.0],
            segments: vec![vec![placed([0.0, 0.0], [1.0, 1.0])], vec![placed([0.0, 1.0], [1.0, 0.0])]],
            total_cost: 0.0,
        };
        // two struts only: they are neighbours in the closed chain
        assert!(detect_crossings(&c).iter().all(|x| x.kind != CrossingKind::Struts));
        assert!(segments_conflict([0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]));
        assert!(!segments_conflict([0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [2.0, 0.0]));
        assert!(segments_conflict([0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [3.0, 0.0]));
    }
}
