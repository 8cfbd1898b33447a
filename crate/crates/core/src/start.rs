//! Constructive starting solution for path and cycle models.
//!
//! The shift puts node 0 on the first sample. Each following node is found
//! by a best-first search over lattice points, stopping at the first point
//! inside the next δ-box. For cycles, the last search continues from the
//! last box back to node 0, so the chain closes exactly.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::golden::{SignedStrut, StrutCatalog, ZomePoint};
use crate::model::{encode_solution, Layout, MipModel, PathLayout, SolutionDecode};

/// Search effort per segment, in expanded lattice points.
pub const DEFAULT_EXPANSIONS: usize = 50_000;

struct Geometry<'a> {
    catalog: &'a StrutCatalog,
    moves: Vec<(SignedStrut, ZomePoint)>,
    max_len: f64,
    shift: [f64; 2],
}

impl Geometry<'_> {
    fn plane(&self, p: &ZomePoint) -> [f64; 2] {
        let q = p.project();
        [q[0] + self.shift[0], q[1] + self.shift[1]]
    }

    /// Distance to the box over the longest strut length: a lower bound on
    /// the struts still needed.
    fn box_steps(&self, q: [f64; 2], center: [f64; 2], hw: f64) -> u64 {
        let dx = ((q[0] - center[0]).abs() - hw).max(0.0);
        let dy = ((q[1] - center[1]).abs() - hw).max(0.0);
        (dx.hypot(dy) / self.max_len - 1e-9).ceil().max(0.0) as u64
    }
}

fn in_box(q: [f64; 2], center: [f64; 2], hw: f64) -> bool {
    // keep off the box edges so the float rows hold
    let inner = if hw == 0.0 { 1e-9 } else { hw - (hw * 1e-9 + 1e-9) };
    (q[0] - center[0]).abs() <= inner && (q[1] - center[1]).abs() <= inner
}

/// Search state: lattice point and, when closing, whether the box was
/// already visited.
type State = (ZomePoint, bool);

struct Found {
    before: Vec<SignedStrut>,
    after: Vec<SignedStrut>,
    split: ZomePoint,
}

/// Best-first search from `from` into the box. With `close_to`, the path
/// stops at a node inside the box and then reaches `close_to` exactly.
fn search(
    geo: &Geometry,
    from: ZomePoint,
    center: [f64; 2],
    hw: f64,
    close_to: Option<ZomePoint>,
    max_expansions: usize,
) -> Option<Found> {
    let target = close_to.map(|t| geo.plane(&t));
    let h = |s: &State| -> u64 {
        let q = geo.plane(&s.0);
        let home = target.map_or(0, |t| geo.box_steps(q, t, 0.0));
        if s.1 {
            home
        } else {
            geo.box_steps(q, center, hw).max(home)
        }
    };
    let mut heap: BinaryHeap<Reverse<(u64, u64, usize)>> = BinaryHeap::new();
    let mut states: Vec<State> = vec![(from, false)];
    let mut parent: Vec<Option<(usize, Option<SignedStrut>)>> = vec![None];
    let mut dist: HashMap<State, u64> = HashMap::from([((from, false), 0)]);
    let h0 = h(&states[0]);
    heap.push(Reverse((h0, h0, 0)));
    let mut expanded = 0;
    while let Some(Reverse((f, _, id))) = heap.pop() {
        let s = states[id];
        let g = dist[&s];
        if f > g + h(&s) {
            continue;
        }
        let done = match close_to {
            None => in_box(geo.plane(&s.0), center, hw),
            Some(t) => s.1 && s.0 == t,
        };
        if done {
            return Some(unwind(&states, &parent, id));
        }
        expanded += 1;
        if expanded > max_expansions {
            return None;
        }
        let mut push = |ns: State, step: Option<SignedStrut>, cost: u64| {
            if dist.get(&ns).is_none_or(|&d| cost < d) {
                dist.insert(ns, cost);
                states.push(ns);
                parent.push(Some((id, step)));
                let hv = h(&ns);
                heap.push(Reverse((cost + hv, hv, states.len() - 1)));
            }
        };
        if close_to.is_some() && !s.1 && in_box(geo.plane(&s.0), center, hw) {
            push((s.0, true), None, g);
        }
        for (st, v) in &geo.moves {
            if let Ok(p) = s.0.checked_add(v) {
                push((p, s.1), Some(*st), g + 1);
            }
        }
    }
    None
}

fn unwind(states: &[State], parent: &[Option<(usize, Option<SignedStrut>)>], mut id: usize) -> Found {
    let mut before = Vec::new();
    let mut after = Vec::new();
    let mut split = states[id].0;
    while let Some((pid, step)) = parent[id] {
        match step {
            Some(s) if states[id].1 => after.push(s),
            Some(s) => before.push(s),
            None => split = states[id].0,
        }
        id = pid;
    }
    before.reverse();
    after.reverse();
    Found { before, after, split }
}

fn counts(struts: &[SignedStrut]) -> Vec<(SignedStrut, u64)> {
    let mut v = struts.to_vec();
    v.sort();
    let mut out: Vec<(SignedStrut, u64)> = Vec::new();
    for s in v {
        match out.last_mut() {
            Some((t, n)) if *t == s => *n += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

fn apply(p: ZomePoint, catalog: &StrutCatalog, struts: &[SignedStrut]) -> ZomePoint {
    struts.iter().fold(p, |q, s| q.checked_add(&catalog.lifted(s)).expect("small lattice coordinates"))
}

/// A feasible assignment for a path or cycle model, if the searches succeed
/// within `max_expansions` each. Budgets are not enforced here; the caller
/// checks the assignment.
pub fn heuristic_start(model: &MipModel, max_expansions: usize) -> Option<Vec<f64>> {
    let Layout::Path(lay) = &model.layout else {
        return None;
    };
    let PathLayout { catalog, samples, cyclic, .. } = lay;
    let k = samples.len();
    let geo = Geometry {
        catalog,
        moves: lay.signed.iter().map(|s| (*s, catalog.lifted(s))).collect(),
        max_len: catalog.max_length(),
        shift: samples[0],
    };
    if geo.moves.is_empty() || geo.max_len <= 0.0 {
        return None;
    }
    let mut nodes = vec![ZomePoint::ORIGIN];
    let mut segs = Vec::with_capacity(k);
    for i in 1..k {
        let hw = lay.box_half_width(i);
        let last_of_cycle = *cyclic && i == k - 1;
        let from = *nodes.last().expect("non-empty");
        if last_of_cycle {
            let f = search(&geo, from, samples[i], hw, Some(ZomePoint::ORIGIN), max_expansions)?;
            debug_assert_eq!(apply(from, geo.catalog, &f.before), f.split);
            nodes.push(f.split);
            segs.push(counts(&f.before));
            segs.push(counts(&f.after));
        } else {
            let f = search(&geo, from, samples[i], hw, None, max_expansions)?;
            nodes.push(apply(from, geo.catalog, &f.before));
            segs.push(counts(&f.before));
        }
    }
    let decode = SolutionDecode { shift: samples[0], nodes, segment_struts: segs };
    let x = encode_solution(model, &decode).ok()?;
    model.check_assignment(&x, 1e-7).ok()?;
    Some(x)
}
