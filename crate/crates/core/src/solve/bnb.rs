//! Best-bound search with depth-first plunging.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::{Condvar, Mutex};
use std::time::{Duration, Instant};

use super::lp::{LpProblem, LpStatus, Simplex};
use super::presolve::{propagate, RowSet};
use super::{gap, SolveConfig, SolveResult, SolveStatus};
use crate::model::{MipModel, Sense, VarKind};

/// Bound change `(var, lower, upper)`; applied by intersection.
type Change = (usize, f64, f64);

#[derive(Debug, Clone, PartialEq)]
pub enum BranchDecision {
    /// Children: the first half of the group is zero / the second half is.
    Sos { group: usize, first: Vec<usize>, second: Vec<usize> },
    /// Children: `var ≤ floor(value)` / `var ≥ ceil(value)`.
    Integer { var: usize, value: f64 },
}

impl BranchDecision {
    pub fn children(&self) -> [Vec<Change>; 2] {
        match self {
            BranchDecision::Sos { first, second, .. } => [
                first.iter().map(|&j| (j, 0.0, 0.0)).collect(),
                second.iter().map(|&j| (j, 0.0, 0.0)).collect(),
            ],
            BranchDecision::Integer { var, value } => [
                vec![(*var, f64::NEG_INFINITY, value.floor())],
                vec![(*var, value.ceil(), f64::INFINITY)],
            ],
        }
    }

    /// Index of the child to explore first.
    fn preferred(&self, x: &[f64]) -> usize {
        match self {
            BranchDecision::Sos { first, second, .. } => {
                let a: f64 = first.iter().map(|&j| x[j].abs()).sum();
                let b: f64 = second.iter().map(|&j| x[j].abs()).sum();
                if a <= b {
                    0
                } else {
                    1
                }
            }
            BranchDecision::Integer { value, .. } => {
                if value - value.floor() < 0.5 {
                    0
                } else {
                    1
                }
            }
        }
    }
}

/// Picks a branching decision for an LP point: a violated SOS-1 group first,
/// otherwise the most fractional integer variable (lowest index on ties).
/// `None` when `x` is integral and SOS-feasible.
pub fn branch(model: &MipModel, x: &[f64], int_tol: f64) -> Option<BranchDecision> {
    let mut best: Option<(usize, f64)> = None;
    for (g, group) in model.sos1.iter().enumerate() {
        let nz: Vec<f64> = group.iter().map(|&j| x[j].abs()).collect();
        if nz.iter().filter(|&&v| v > int_tol).count() > 1 {
            let max = nz.iter().cloned().fold(0.0, f64::max);
            let score = nz.iter().sum::<f64>() - max;
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((g, score));
            }
        }
    }
    if let Some((g, _)) = best {
        let group = &model.sos1[g];
        let half = group.len() / 2;
        return Some(BranchDecision::Sos {
            group: g,
            first: group[..half].to_vec(),
            second: group[half..].to_vec(),
        });
    }
    let mut pick: Option<(usize, f64)> = None;
    for (j, v) in model.vars.iter().enumerate() {
        if v.kind != VarKind::Integer {
            continue;
        }
        let f = x[j] - x[j].floor();
        let dist = f.min(1.0 - f);
        if dist > int_tol && pick.is_none_or(|(_, d)| dist > d) {
            pick = Some((j, dist));
        }
    }
    pick.map(|(var, _)| BranchDecision::Integer { var, value: x[var] })
}

#[derive(Debug, Clone)]
struct Node {
    bound: f64,
    depth: u32,
    id: u64,
    changes: Vec<Change>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // BinaryHeap is a max-heap: the "greatest" node has the smallest bound,
    // then the largest depth, then the smallest id.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then(self.depth.cmp(&other.depth))
            .then(other.id.cmp(&self.id))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    Exhausted,
    TimeLimit,
    NodeLimit,
    Unbounded,
}

struct Shared {
    heap: BinaryHeap<Node>,
    active: Vec<Option<f64>>,
    incumbent: Option<(f64, Vec<f64>)>,
    best_bound: f64,
    history: Vec<f64>,
    nodes: u64,
    next_id: u64,
    stop: Option<Stop>,
}

struct Ctx<'a> {
    model: &'a MipModel,
    cfg: &'a SolveConfig,
    rows: RowSet,
    root_lo: Vec<f64>,
    root_hi: Vec<f64>,
    lp: LpProblem,
    deadline: Instant,
    integral_obj: bool,
}

impl Ctx<'_> {
    /// Whether a node with this bound cannot beat the incumbent.
    fn prunable(&self, bound: f64, inc: f64) -> bool {
        if self.integral_obj {
            (bound - 1e-6).ceil() >= inc - 1e-9
        } else {
            gap(inc, bound) <= self.cfg.gap_tolerance
        }
    }

    fn round_bound(&self, b: f64) -> f64 {
        if self.integral_obj && b.is_finite() {
            (b - 1e-6).ceil()
        } else {
            b
        }
    }
}

fn build_lp(model: &MipModel, lo: &[f64], hi: &[f64]) -> LpProblem {
    let n = model.vars.len();
    let mut cols = vec![Vec::new(); n];
    let mut row_lo = Vec::with_capacity(model.constraints.len());
    let mut row_hi = Vec::with_capacity(model.constraints.len());
    for (r, c) in model.constraints.iter().enumerate() {
        for &(j, a) in &c.coeffs {
            cols[j].push((r, a));
        }
        let (l, h) = match c.sense {
            Sense::Le => (f64::NEG_INFINITY, c.rhs),
            Sense::Ge => (c.rhs, f64::INFINITY),
            Sense::Eq => (c.rhs, c.rhs),
        };
        row_lo.push(l);
        row_hi.push(h);
    }
    // merge duplicate entries within a column
    for col in &mut cols {
        col.sort_by_key(|e| e.0);
        col.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        col.retain(|e| e.1 != 0.0);
    }
    let mut obj = vec![0.0; n];
    for &(j, c) in &model.objective {
        obj[j] += c;
    }
    LpProblem { cols, obj, col_lo: lo.to_vec(), col_hi: hi.to_vec(), row_lo, row_hi }
}

pub(super) fn run(model: &MipModel, cfg: &SolveConfig, start: Option<&[f64]>) -> SolveResult {
    let t0 = Instant::now();
    let deadline = t0 + Duration::from_secs_f64(cfg.time_limit_s.min(1e9));
    let rows = RowSet::from_model(model);
    let mut lo: Vec<f64> = model.vars.iter().map(|v| v.lower).collect();
    let mut hi: Vec<f64> = model.vars.iter().map(|v| v.upper).collect();
    let integral_obj = model.objective_is_integral();

    let mut incumbent = None;
    if let Some(s) = start {
        if s.len() == model.vars.len() {
            let xr = round_ints(model, s);
            match model.check_assignment(&xr, cfg.feasibility_tol) {
                Ok(()) => incumbent = Some((model.objective_value(&xr), xr)),
                Err(e) => log::warn!("ignoring infeasible start: {e}"),
            }
        }
    }

    let finish = |status: SolveStatus, inc: Option<(f64, Vec<f64>)>, bound: f64, nodes: u64, history: Vec<f64>| {
        let (objective, x) = match inc {
            Some((o, x)) => (Some(o), Some(x)),
            None => (None, None),
        };
        let g = match objective {
            Some(o) => gap(o, bound).max(0.0),
            None => f64::INFINITY,
        };
        SolveResult {
            status,
            incumbent: x,
            objective,
            best_bound: bound,
            gap: g,
            nodes_explored: nodes,
            wall_time_s: t0.elapsed().as_secs_f64(),
            bound_history: history,
        }
    };

    if !propagate(&rows, &mut lo, &mut hi, None) {
        return finish(SolveStatus::InfeasibleProven, None, f64::INFINITY, 0, vec![f64::INFINITY]);
    }
    let lp = build_lp(model, &lo, &hi);
    let ctx = Ctx { model, cfg, rows, root_lo: lo, root_hi: hi, lp, deadline, integral_obj };

    let threads = cfg.threads.max(1);
    let shared = Mutex::new(Shared {
        heap: BinaryHeap::from(vec![Node { bound: f64::NEG_INFINITY, depth: 0, id: 0, changes: Vec::new() }]),
        active: vec![None; threads],
        incumbent,
        best_bound: f64::NEG_INFINITY,
        history: Vec::new(),
        nodes: 0,
        next_id: 1,
        stop: None,
    });
    let cv = Condvar::new();
    if threads == 1 {
        worker(&ctx, &shared, &cv, 0);
    } else {
        std::thread::scope(|s| {
            for w in 0..threads {
                let (ctx, shared, cv) = (&ctx, &shared, &cv);
                s.spawn(move || worker(ctx, shared, cv, w));
            }
        });
    }
    let sh = shared.into_inner().unwrap_or_else(|p| p.into_inner());
    let stop = sh.stop.unwrap_or(Stop::Exhausted);
    let inc_val = sh.incumbent.as_ref().map(|i| i.0);
    let mut bound = sh.best_bound;
    let status = match stop {
        Stop::Unbounded => SolveStatus::Unbounded,
        Stop::Exhausted => {
            bound = match inc_val {
                Some(v) => v.min(bound.max(v)),
                None => f64::INFINITY,
            };
            if inc_val.is_some() {
                SolveStatus::Optimal
            } else {
                SolveStatus::InfeasibleProven
            }
        }
        Stop::TimeLimit | Stop::NodeLimit => match inc_val {
            Some(v) if gap(v, bound) <= cfg.gap_tolerance => SolveStatus::Optimal,
            Some(_) => SolveStatus::FeasibleTimeLimit,
            None => SolveStatus::NoSolutionTimeLimit,
        },
    };
    let mut history = sh.history;
    if history.last() != Some(&bound) && bound >= history.last().copied().unwrap_or(f64::NEG_INFINITY) {
        history.push(bound);
    }
    finish(status, sh.incumbent, bound, sh.nodes, history)
}

fn round_ints(model: &MipModel, x: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(&model.vars)
        .map(|(&v, var)| if var.kind == VarKind::Integer { v.round() } else { v })
        .collect()
}

/// Recomputes the global bound from open and active nodes.
fn refresh_bound(ctx: &Ctx, sh: &mut Shared) {
    let mut b = sh.heap.peek().map_or(f64::INFINITY, |n| n.bound);
    for a in sh.active.iter().flatten() {
        b = b.min(*a);
    }
    if !b.is_finite() && b > 0.0 {
        if let Some((v, _)) = &sh.incumbent {
            b = *v;
        }
    }
    if let Some((v, _)) = &sh.incumbent {
        b = b.min(*v);
    }
    let b = ctx.round_bound(b);
    if b > sh.best_bound || sh.history.is_empty() {
        sh.best_bound = sh.best_bound.max(b);
        sh.history.push(sh.best_bound);
    }
}

enum Outcome {
    Pruned,
    Interrupted(Node),
    Unbounded,
    Branched { bound: f64, children: [Node; 2], preferred: usize },
}

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}

fn worker(ctx: &Ctx, shared: &Mutex<Shared>, cv: &Condvar, wid: usize) {
    let mut lp = Simplex::new(&ctx.lp);
    lp.feas_tol = ctx.cfg.feasibility_tol;
    let mut rng = Rng(ctx.cfg.rng_seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(wid as u64 + 1) | 1);
    let mut current: Option<Node> = None;
    loop {
        let node = match current.take() {
            Some(n) => n,
            None => {
                let mut sh = shared.lock().unwrap_or_else(|p| p.into_inner());
                loop {
                    if sh.stop.is_some() {
                        sh.active[wid] = None;
                        cv.notify_all();
                        return;
                    }
                    if let Some(n) = sh.heap.pop() {
                        sh.active[wid] = Some(n.bound);
                        break n;
                    }
                    sh.active[wid] = None;
                    if sh.active.iter().all(Option::is_none) {
                        sh.stop = Some(Stop::Exhausted);
                        refresh_bound(ctx, &mut sh);
                        cv.notify_all();
                        return;
                    }
                    if Instant::now() >= ctx.deadline {
                        sh.stop = Some(Stop::TimeLimit);
                        cv.notify_all();
                        return;
                    }
                    sh = cv.wait_timeout(sh, Duration::from_millis(20)).unwrap_or_else(|p| p.into_inner()).0;
                }
            }
        };
        let (inc, node_count) = {
            let mut sh = shared.lock().unwrap_or_else(|p| p.into_inner());
            let limit_hit = ctx.cfg.node_limit.is_some_and(|l| sh.nodes >= l);
            if sh.stop.is_some() || limit_hit || Instant::now() >= ctx.deadline {
                if sh.stop.is_none() {
                    sh.stop = Some(if limit_hit { Stop::NodeLimit } else { Stop::TimeLimit });
                }
                sh.heap.push(node);
                sh.active[wid] = None;
                refresh_bound(ctx, &mut sh);
                cv.notify_all();
                return;
            }
            sh.nodes += 1;
            (sh.incumbent.as_ref().map(|i| i.0), sh.nodes)
        };
        let (outcome, found) = process(ctx, &mut lp, node, inc, node_count, wid, &mut rng);
        let mut sh = shared.lock().unwrap_or_else(|p| p.into_inner());
        if let Some((v, x)) = found {
            if sh.incumbent.as_ref().is_none_or(|i| v < i.0 - 1e-9) {
                log::debug!("new incumbent {v} at node {}", sh.nodes);
                sh.incumbent = Some((v, x));
            }
        }
        match outcome {
            Outcome::Pruned => {
                sh.active[wid] = None;
            }
            Outcome::Interrupted(n) => {
                sh.heap.push(n);
                sh.active[wid] = None;
                sh.stop.get_or_insert(Stop::TimeLimit);
            }
            Outcome::Unbounded => {
                sh.active[wid] = None;
                sh.stop = Some(Stop::Unbounded);
            }
            Outcome::Branched { bound, children, preferred } => {
                let [a, b] = children;
                let (keep, other) = if preferred == 0 { (a, b) } else { (b, a) };
                let pruned_by_inc = sh.incumbent.as_ref().is_some_and(|i| ctx.prunable(bound, i.0));
                if pruned_by_inc {
                    sh.active[wid] = None;
                } else {
                    let mut keep = keep;
                    let mut other = other;
                    keep.id = sh.next_id;
                    other.id = sh.next_id + 1;
                    sh.next_id += 2;
                    sh.heap.push(other);
                    sh.active[wid] = Some(keep.bound);
                    current = Some(keep);
                }
            }
        }
        // drop dominated open nodes lazily: they are skipped when popped
        refresh_bound(ctx, &mut sh);
        let closed = sh
            .incumbent
            .as_ref()
            .is_some_and(|(v, _)| ctx.prunable(sh.best_bound, *v) || gap(*v, sh.best_bound) <= ctx.cfg.gap_tolerance);
        if closed {
            sh.stop.get_or_insert(Stop::Exhausted);
        }
        if sh.stop.is_some() {
            if current.is_some() {
                let n = current.take().expect("checked");
                sh.heap.push(n);
                sh.active[wid] = None;
            }
            cv.notify_all();
            return;
        }
        cv.notify_all();
    }
}

fn process(
    ctx: &Ctx,
    lp: &mut Simplex,
    node: Node,
    inc: Option<f64>,
    node_count: u64,
    wid: usize,
    rng: &mut Rng,
) -> (Outcome, Option<(f64, Vec<f64>)>) {
    if let Some(v) = inc {
        if ctx.prunable(node.bound, v) {
            return (Outcome::Pruned, None);
        }
    }
    let mut lo = ctx.root_lo.clone();
    let mut hi = ctx.root_hi.clone();
    let mut touched = Vec::with_capacity(node.changes.len());
    for &(j, l, h) in &node.changes {
        lo[j] = lo[j].max(l);
        hi[j] = hi[j].min(h);
        touched.push(j);
    }
    if !propagate(&ctx.rows, &mut lo, &mut hi, Some(&touched)) {
        return (Outcome::Pruned, None);
    }
    lp.set_all_col_bounds(&lo, &hi);
    let mut status = lp.solve(Some(ctx.deadline));
    if status == LpStatus::IterationLimit {
        log::debug!("LP iteration limit; restarting from a slack basis");
        let mut fresh = build_lp_like(ctx, &lo, &hi);
        fresh.feas_tol = ctx.cfg.feasibility_tol;
        status = fresh.solve(Some(ctx.deadline));
        *lp = fresh;
    }
    match status {
        LpStatus::TimeLimit => return (Outcome::Interrupted(node), None),
        LpStatus::Infeasible => return (Outcome::Pruned, None),
        LpStatus::Unbounded => return (Outcome::Unbounded, None),
        LpStatus::IterationLimit => {
            // No usable LP: split the widest integer domain without a bound.
            let pick = (0..lo.len())
                .filter(|&j| ctx.model.vars[j].kind == VarKind::Integer && hi[j] > lo[j])
                .max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b])));
            let Some(j) = pick else {
                log::warn!("dropping node with unresolved LP and fixed integers");
                return (Outcome::Pruned, None);
            };
            let mid = if lo[j].is_finite() && hi[j].is_finite() { ((lo[j] + hi[j]) / 2.0).floor() + 0.5 } else { 0.5 };
            let dec = BranchDecision::Integer { var: j, value: mid };
            let children = make_children(&node, &dec, node.bound, &[]);
            return (Outcome::Branched { bound: node.bound, children, preferred: 0 }, None);
        }
        LpStatus::Optimal => {}
    }
    let obj = lp.objective();
    let bound = node.bound.max(obj);
    if let Some(v) = inc {
        if ctx.prunable(bound, v) {
            return (Outcome::Pruned, None);
        }
    }
    let x = lp.primal();
    let Some(dec) = branch(ctx.model, &x, ctx.cfg.integrality_tol) else {
        let found = polish(ctx, &x);
        if found.is_none() {
            log::debug!("integral LP point failed the exact check");
        }
        return (Outcome::Pruned, found);
    };
    let mut found = None;
    if node.depth == 0 || node_count.is_multiple_of(32) {
        found = polish(ctx, &round_ints(ctx.model, &x));
    }
    let cutoff = match (&found, inc) {
        (Some((a, _)), Some(b)) => Some(a.min(b)),
        (Some((a, _)), None) => Some(*a),
        (None, b) => b,
    };
    let mut fixes = Vec::new();
    if let Some(c) = cutoff {
        let target = if ctx.integral_obj { c - 1.0 + 1e-6 } else { c };
        let rc = lp.reduced_costs();
        for j in 0..lo.len() {
            if ctx.model.vars[j].kind != VarKind::Integer || lp.is_basic(j) || hi[j] <= lo[j] {
                continue;
            }
            let d = rc[j];
            if d > 1e-7 && lp.value(j) == lo[j] {
                let room = ((target - obj) / d + 1e-9).floor();
                if room < 0.0 {
                    return (Outcome::Pruned, found);
                }
                if lo[j] + room < hi[j] {
                    fixes.push((j, f64::NEG_INFINITY, lo[j] + room));
                }
            } else if d < -1e-7 && lp.value(j) == hi[j] {
                let room = ((target - obj) / -d + 1e-9).floor();
                if room < 0.0 {
                    return (Outcome::Pruned, found);
                }
                if hi[j] - room > lo[j] {
                    fixes.push((j, hi[j] - room, f64::INFINITY));
                }
            }
        }
    }
    let children = make_children(&node, &dec, bound, &fixes);
    let mut preferred = dec.preferred(&x);
    if wid > 0 && rng.next().is_multiple_of(4) {
        preferred = 1 - preferred;
    }
    (Outcome::Branched { bound, children, preferred }, found)
}

fn build_lp_like(ctx: &Ctx, lo: &[f64], hi: &[f64]) -> Simplex {
    let mut p = ctx.lp.clone();
    p.col_lo = lo.to_vec();
    p.col_hi = hi.to_vec();
    Simplex::new(&p)
}

fn make_children(node: &Node, dec: &BranchDecision, bound: f64, fixes: &[Change]) -> [Node; 2] {
    dec.children().map(|extra| {
        let mut changes = node.changes.clone();
        changes.extend_from_slice(fixes);
        changes.extend(extra);
        Node { bound, depth: node.depth + 1, id: 0, changes: compact(changes) }
    })
}

/// Merges repeated changes to the same variable into one intersection.
fn compact(mut changes: Vec<Change>) -> Vec<Change> {
    changes.sort_by_key(|c| c.0);
    changes.dedup_by(|b, a| {
        if a.0 == b.0 {
            a.1 = a.1.max(b.1);
            a.2 = a.2.min(b.2);
            true
        } else {
            false
        }
    });
    changes
}

/// Fixes integers at their rounded values and re-optimizes the continuous
/// variables; returns the point if it passes the exact check.
fn polish(ctx: &Ctx, x: &[f64]) -> Option<(f64, Vec<f64>)> {
    let model = ctx.model;
    let mut xr = round_ints(model, x);
    for (j, v) in model.vars.iter().enumerate() {
        if v.kind == VarKind::Integer {
            xr[j] = xr[j].clamp(ctx.root_lo[j], ctx.root_hi[j]);
        }
    }
    if model.check_assignment(&xr, ctx.cfg.feasibility_tol).is_ok() {
        return Some((model.objective_value(&xr), xr));
    }
    let conts: Vec<usize> = (0..model.vars.len()).filter(|&j| model.vars[j].kind == VarKind::Continuous).collect();
    if conts.is_empty() {
        return None;
    }
    let mut map = vec![usize::MAX; model.vars.len()];
    for (k, &j) in conts.iter().enumerate() {
        map[j] = k;
    }
    let mut p = LpProblem {
        cols: vec![Vec::new(); conts.len()],
        obj: vec![0.0; conts.len()],
        col_lo: conts.iter().map(|&j| ctx.root_lo[j]).collect(),
        col_hi: conts.iter().map(|&j| ctx.root_hi[j]).collect(),
        row_lo: Vec::new(),
        row_hi: Vec::new(),
    };
    for &(j, c) in &model.objective {
        if map[j] != usize::MAX {
            p.obj[map[j]] += c;
        }
    }
    for c in &model.constraints {
        let mut constant = 0.0;
        let mut has_cont = false;
        for &(j, a) in &c.coeffs {
            if map[j] == usize::MAX {
                constant += a * xr[j];
            } else {
                has_cont = true;
            }
        }
        if !has_cont {
            continue;
        }
        let r = p.row_lo.len();
        for &(j, a) in &c.coeffs {
            if map[j] != usize::MAX && a != 0.0 {
                p.cols[map[j]].push((r, a));
            }
        }
        let (l, h) = match c.sense {
            Sense::Le => (f64::NEG_INFINITY, c.rhs - constant),
            Sense::Ge => (c.rhs - constant, f64::INFINITY),
            Sense::Eq => (c.rhs - constant, c.rhs - constant),
        };
        p.row_lo.push(l);
        p.row_hi.push(h);
    }
    let mut s = Simplex::new(&p);
    s.feas_tol = ctx.cfg.feasibility_tol * 0.1;
    if s.solve(Some(ctx.deadline)) != LpStatus::Optimal {
        return None;
    }
    for (k, &j) in conts.iter().enumerate() {
        xr[j] = s.value(k);
    }
    model.check_assignment(&xr, ctx.cfg.feasibility_tol).ok()?;
    Some((model.objective_value(&xr), xr))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_branch_children() {
        let mut m = MipModel::default();
        m.add_var("a", VarKind::Integer, 0.0, 10.0);
        m.add_var("b", VarKind::Integer, 0.0, 10.0);
        let dec = branch(&m, &[2.5, 1.0], 1e-6).unwrap();
        assert_eq!(dec, BranchDecision::Integer { var: 0, value: 2.5 });
        let [down, up] = dec.children();
        assert_eq!(down, vec![(0, f64::NEG_INFINITY, 2.0)]);
        assert_eq!(up, vec![(0, 3.0, f64::INFINITY)]);
        // ties go to the lowest index
        let dec = branch(&m, &[1.5, 2.5], 1e-6).unwrap();
        assert_eq!(dec, BranchDecision::Integer { var: 0, value: 1.5 });
        assert!(branch(&m, &[2.0, 3.0], 1e-6).is_none());
    }

    #[test]
    fn sos_branch_children() {
        let mut m = MipModel::default();
        m.add_var("p", VarKind::Integer, 0.0, 5.0);
        m.add_var("q", VarKind::Integer, 0.0, 5.0);
        m.sos1.push(vec![0, 1]);
        let dec = branch(&m, &[1.2, 0.7], 1e-6).unwrap();
        let [a, b] = dec.children();
        assert_eq!(a, vec![(0, 0.0, 0.0)]);
        assert_eq!(b, vec![(1, 0.0, 0.0)]);
        assert!(branch(&m, &[3.0, 0.0], 1e-6).is_none());
    }
}
