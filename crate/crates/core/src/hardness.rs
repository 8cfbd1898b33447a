//! Reductions from Partition and 3-Partition to the approximation problems,
//! with brute-force oracles. Used to generate test instances whose answer
//! is known.
//!
//! Reduced instances use a custom catalog with one edge type per distinct
//! number `v`, moving by `(v, 0)` or `(0, v)`, with the multiplicity of `v`
//! as budget. All lifted coordinates have zero φ-part.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::golden::{StrutCatalog, StrutType, ZomePoint};
use crate::model::{build_dpc_feasibility, build_path_model, MipModel, ModelError, PathOptions};

/// Box half-width of the path and cycle reductions. Below 1/2, so with
/// integral edge lengths every node sits exactly on its sample point.
pub const REDUCTION_DELTA: f64 = 1.0 / 3.0;
pub const PARTITION_ORACLE_CAP: usize = 22;
pub const THREE_PARTITION_ORACLE_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("instance is empty")]
    Empty,
    #[error("numbers must be positive")]
    NonPositive,
    #[error("odd total {0}: the target would not be integral")]
    OddSum(u64),
    #[error("not a 3-partition instance: {0}")]
    Invariant(String),
    #[error("instance of size {size} exceeds the oracle cap {cap}")]
    TooLarge { size: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionInstance {
    pub a: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePartitionInstance {
    pub a: Vec<u64>,
    /// Target triple sum `A`.
    pub target: u64,
}

impl PartitionInstance {
    pub fn validate(&self) -> Result<(), HardnessError> {
        if self.a.is_empty() {
            return Err(HardnessError::Empty);
        }
        if self.a.contains(&0) {
            return Err(HardnessError::NonPositive);
        }
        Ok(())
    }
}

impl ThreePartitionInstance {
    pub fn m(&self) -> usize {
        self.a.len() / 3
    }

    /// Checks `|a| = 3m`, `A/4 < a_i < A/2` and `Σ a_i = m·A`.
    pub fn validate(&self) -> Result<(), HardnessError> {
        if self.a.is_empty() {
            return Err(HardnessError::Empty);
        }
        if !self.a.len().is_multiple_of(3) {
            return Err(HardnessError::Invariant(format!("{} numbers, not a multiple of 3", self.a.len())));
        }
        let t = self.target;
        if let Some(&v) = self.a.iter().find(|&&v| 4 * v <= t || 2 * v >= t) {
            return Err(HardnessError::Invariant(format!("{v} is not strictly between A/4 and A/2")));
        }
        let sum: u64 = self.a.iter().sum();
        if sum != self.m() as u64 * t {
            return Err(HardnessError::Invariant(format!("sum {sum} differs from m·A = {}", self.m() as u64 * t)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    Dpc,
    Dpas,
    Dcas,
}

/// How the closed instance is completed around the staircase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosingCase {
    /// `m` odd, staircase ends on the x-axis (`m ≡ 3 mod 4`).
    OddLow,
    /// `m` odd, staircase ends at height `A` (`m ≡ 1 mod 4`).
    OddHigh,
    /// `m` even and `m/2` even.
    EvenEven,
    /// `m` even and `m/2` odd.
    EvenOdd,
}

impl ClosingCase {
    pub fn for_m(m: usize) -> Self {
        if m % 2 == 1 {
            if m % 4 == 3 {
                ClosingCase::OddLow
            } else {
                ClosingCase::OddHigh
            }
        } else if (m / 2).is_multiple_of(2) {
            ClosingCase::EvenEven
        } else {
            ClosingCase::EvenOdd
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedInstance {
    pub kind: ReductionKind,
    pub catalog: StrutCatalog,
    /// DPC: start and target. Otherwise the sample points in order.
    pub points: Vec<[i64; 2]>,
    pub delta: f64,
    pub closing: Option<ClosingCase>,
}

impl ReducedInstance {
    /// Number of edge types coming from the input numbers, excluding the
    /// auxiliary closing edges.
    pub fn num_main_types(&self) -> usize {
        self.catalog.types.iter().filter(|t| !t.label().starts_with("aux")).count()
    }

    pub fn sample_points(&self) -> Vec<[f64; 2]> {
        self.points.iter().map(|p| [p[0] as f64, p[1] as f64]).collect()
    }

    /// The integer program whose feasibility answers the instance.
    pub fn build_model(&self, use_sos1: bool) -> Result<MipModel, ModelError> {
        match self.kind {
            ReductionKind::Dpc => {
                let [s, t] = [self.points[0], self.points[1]];
                let d = ZomePoint::new(t[0] - s[0], 0, t[1] - s[1], 0);
                Ok(build_dpc_feasibility(&self.catalog, &d, use_sos1))
            }
            ReductionKind::Dpas => build_path_model(
                &self.catalog,
                &self.sample_points(),
                self.delta,
                PathOptions { use_sos1, cyclic: false, exact_endpoints: true, ..PathOptions::default() },
            ),
            ReductionKind::Dcas => build_path_model(
                &self.catalog,
                &self.sample_points(),
                self.delta,
                PathOptions { use_sos1, cyclic: true, ..PathOptions::default() },
            ),
        }
    }
}

fn axis_type(label: String, lengths: [i64; 2], budget: u64) -> StrutType {
    let mut cols = Vec::new();
    if lengths[0] != 0 {
        cols.push(ZomePoint::new(lengths[0], 0, 0, 0));
    }
    if lengths[1] != 0 {
        cols.push(ZomePoint::new(0, 0, lengths[1], 0));
    }
    StrutType::custom(label, cols, Some(budget))
}

/// One type per distinct value, budget = multiplicity, ascending by value.
fn value_types(a: &[u64]) -> Vec<StrutType> {
    let mut vals = a.to_vec();
    vals.sort_unstable();
    vals.dedup();
    vals.iter()
        .map(|&v| {
            let count = a.iter().filter(|&&x| x == v).count() as u64;
            axis_type(format!("e{v}"), [v as i64, v as i64], count)
        })
        .collect()
}

/// Staircase `p_j = (⌊j/2⌋A, (⌈j/2⌉ mod 2)A)` for `j = 0..=m`.
fn staircase(m: usize, a: i64) -> Vec<[i64; 2]> {
    (0..=m as i64).map(|j| [(j / 2) * a, ((j + 1) / 2 % 2) * a]).collect()
}

/// Partition → point connectivity: can `(0,0)` reach `(A, A)` with
/// `A = Σa/2`, using each number at most once as a horizontal or vertical
/// step?
pub fn reduce_partition_to_dpc(p: &PartitionInstance) -> Result<ReducedInstance, HardnessError> {
    p.validate()?;
    let sum: u64 = p.a.iter().sum();
    if sum % 2 == 1 {
        return Err(HardnessError::OddSum(sum));
    }
    let half = (sum / 2) as i64;
    Ok(ReducedInstance {
        kind: ReductionKind::Dpc,
        catalog: StrutCatalog::custom(value_types(&p.a)),
        points: vec![[0, 0], [half, half]],
        delta: 0.0,
        closing: None,
    })
}

/// 3-Partition → sampled path approximation along a staircase of `m`
/// segments of length `A`, alternating horizontal and vertical.
pub fn reduce_3partition_to_dpas(p: &ThreePartitionInstance) -> Result<ReducedInstance, HardnessError> {
    p.validate()?;
    Ok(ReducedInstance {
        kind: ReductionKind::Dpas,
        catalog: StrutCatalog::custom(value_types(&p.a)),
        points: staircase(p.m(), p.target as i64),
        delta: REDUCTION_DELTA,
        closing: None,
    })
}

/// 3-Partition → sampled contour approximation: the staircase closed by a
/// detour below and left of it, walkable only with auxiliary edges.
pub fn reduce_3partition_to_dcas(p: &ThreePartitionInstance) -> Result<ReducedInstance, HardnessError> {
    p.validate()?;
    let m = p.m();
    let a = p.target as i64;
    let h = (m / 2) as i64;
    let mut points = staircase(m, a);
    let mut types = value_types(&p.a);
    let case = ClosingCase::for_m(m);
    let mut aux = |name: &str, lengths: [i64; 2], budget: u64| types.push(axis_type(format!("aux-{name}"), lengths, budget));
    match case {
        ClosingCase::OddLow => {
            points.extend([[(h + 2) * a, 0], [(h + 2) * a, -2 * a], [-2 * a, -2 * a], [-2 * a, 0]]);
            aux("long", [(h + 4) * a, 0], 1);
            aux("2a", [2 * a, 2 * a], 4);
        }
        ClosingCase::OddHigh => {
            points.extend([[(h + 2) * a, a], [(h + 2) * a, -2 * a], [-2 * a, -2 * a], [-2 * a, 0]]);
            aux("long", [(h + 4) * a, 0], 1);
            aux("3a", [0, 3 * a], 1);
            aux("2a", [2 * a, 2 * a], 3);
        }
        ClosingCase::EvenEven => {
            points.extend([[h * a, -2 * a], [-2 * a, -2 * a], [-2 * a, 0]]);
            aux("long", [(h + 2) * a, 0], 1);
            aux("2a", [2 * a, 2 * a], 3);
        }
        ClosingCase::EvenOdd => {
            points.extend([[h * a, -2 * a], [-2 * a, -2 * a], [-2 * a, 0]]);
            aux("long", [(h + 2) * a, 0], 1);
            aux("3a", [0, 3 * a], 1);
            aux("2a", [2 * a, 2 * a], 2);
        }
    }
    Ok(ReducedInstance {
        kind: ReductionKind::Dcas,
        catalog: StrutCatalog::custom(types),
        points,
        delta: REDUCTION_DELTA,
        closing: Some(case),
    })
}

/// Whether some subset sums to exactly half the total, by enumeration.
pub fn oracle_partition(p: &PartitionInstance) -> Result<bool, HardnessError> {
    p.validate()?;
    let n = p.a.len();
    if n > PARTITION_ORACLE_CAP {
        return Err(HardnessError::TooLarge { size: n, cap: PARTITION_ORACLE_CAP });
    }
    let sum: u64 = p.a.iter().sum();
    if sum % 2 == 1 {
        return Ok(false);
    }
    Ok((0u32..1 << n).any(|mask| {
        let s: u64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| p.a[i]).sum();
        2 * s == sum
    }))
}

/// Subset-sum dynamic program; same answer as [`oracle_partition`].
pub fn partition_dp(a: &[u64]) -> bool {
    let sum: u64 = a.iter().sum();
    if sum % 2 == 1 {
        return false;
    }
    let half = (sum / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &v in a {
        let v = v as usize;
        for s in (v..=half).rev() {
            reach[s] |= reach[s - v];
        }
    }
    reach[half]
}

/// Whether the numbers split into triples each summing to `A`, by
/// exhaustive matching of the smallest remaining number.
pub fn oracle_3partition(p: &ThreePartitionInstance) -> Result<bool, HardnessError> {
    p.validate()?;
    if p.m() > THREE_PARTITION_ORACLE_CAP {
        return Err(HardnessError::TooLarge { size: p.m(), cap: THREE_PARTITION_ORACLE_CAP });
    }
    let mut rest = p.a.clone();
    rest.sort_unstable();
    Ok(triples(&rest, p.target))
}

fn triples(rest: &[u64], target: u64) -> bool {
    let Some((&first, tail)) = rest.split_first() else {
        return true;
    };
    for i in 0..tail.len() {
        for j in i + 1..tail.len() {
            if first + tail[i] + tail[j] == target {
                let next: Vec<u64> = tail.iter().enumerate().filter(|&(t, _)| t != i && t != j).map(|(_, &v)| v).collect();
                if triples(&next, target) {
                    return true;
                }
            }
        }
    }
    false
}

/// `n` numbers drawn uniformly from `1..=max`.
pub fn random_partition(rng: &mut impl Rng, n: usize, max: u64) -> PartitionInstance {
    PartitionInstance { a: (0..n).map(|_| rng.gen_range(1..=max.max(1))).collect() }
}

/// A random 3-Partition instance with target `A`, or `None` when no valid
/// instance was found within a bounded number of draws (for example when no
/// integer lies strictly between `A/4` and `A/2`). With `planted`, the
/// numbers are built from `m` triples that each sum to `A`, so the answer is
/// yes.
pub fn random_3partition(rng: &mut impl Rng, m: usize, target: u64, planted: bool) -> Option<ThreePartitionInstance> {
    if m == 0 {
        return None;
    }
    let lo = target / 4 + 1;
    let hi = target.div_ceil(2) - 1;
    if lo > hi {
        return None;
    }
    let ok = |v: u64| v >= lo && v <= hi;
    for _ in 0..10_000 {
        let a: Option<Vec<u64>> = if planted {
            (0..m)
                .map(|_| {
                    let x = rng.gen_range(lo..=hi);
                    let y = rng.gen_range(lo..=hi);
                    let z = target.checked_sub(x + y)?;
                    ok(z).then_some([x, y, z])
                })
                .collect::<Option<Vec<_>>>()
                .map(|t| t.concat())
        } else {
            let mut a: Vec<u64> = (0..3 * m - 1).map(|_| rng.gen_range(lo..=hi)).collect();
            let sum: u64 = a.iter().sum();
            (m as u64 * target).checked_sub(sum).filter(|&last| ok(last)).map(|last| {
                a.push(last);
                a
            })
        };
        if let Some(mut a) = a {
            // hide the planted grouping
            for i in (1..a.len()).rev() {
                a.swap(i, rng.gen_range(0..=i));
            }
            return Some(ThreePartitionInstance { a, target });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_examples() {
        let yes = PartitionInstance { a: vec![1, 2, 3] };
        assert!(oracle_partition(&yes).unwrap());
        let no = PartitionInstance { a: vec![1, 1, 1] };
        assert!(!oracle_partition(&no).unwrap());
        assert_eq!(reduce_partition_to_dpc(&no).unwrap_err(), HardnessError::OddSum(3));
        let r = reduce_partition_to_dpc(&PartitionInstance { a: vec![1, 1, 2, 2] }).unwrap();
        assert_eq!(r.points[1], [3, 3]);
        assert_eq!(r.catalog.len(), 2);
        assert_eq!(r.catalog.types[0].budget, Some(2));
        assert_eq!(r.catalog.types[1].budget, Some(2));
    }

    #[test]
    fn three_partition_examples() {
        let p = ThreePartitionInstance { a: vec![3, 3, 3, 2, 4, 3], target: 9 };
        assert!(p.validate().is_err(), "2 is not above 9/4");
        let p = ThreePartitionInstance { a: vec![3, 3, 3, 3, 3, 3], target: 9 };
        assert!(oracle_3partition(&p).unwrap());
        let p = ThreePartitionInstance { a: vec![7, 7, 7, 6, 8, 7], target: 21 };
        assert!(oracle_3partition(&p).unwrap());
        let p = ThreePartitionInstance { a: vec![6, 6, 6, 8, 8, 8], target: 21 };
        assert!(!oracle_3partition(&p).unwrap());
    }

    #[test]
    fn staircase_shape() {
        assert_eq!(staircase(4, 5), vec![[0, 0], [0, 5], [5, 5], [5, 0], [10, 0]]);
    }

    #[test]
    fn closing_case_selection() {
        assert_eq!(ClosingCase::for_m(1), ClosingCase::OddHigh);
        assert_eq!(ClosingCase::for_m(2), ClosingCase::EvenOdd);
        assert_eq!(ClosingCase::for_m(3), ClosingCase::OddLow);
        assert_eq!(ClosingCase::for_m(4), ClosingCase::EvenEven);
        assert_eq!(ClosingCase::for_m(6), ClosingCase::EvenOdd);
    }
}
