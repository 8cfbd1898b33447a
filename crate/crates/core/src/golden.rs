//! Exact arithmetic in the golden ring Z[φ] and the planar Zometool strut catalog.
//!
//! Every node reachable from the origin with Zome struts (scaled so the short
//! blue strut has length 2) sits at `(α₁ + β₁φ, α₂ + β₂φ)` with integer
//! coefficients. [`ZomePoint`] stores those four integers directly, which keeps
//! path bookkeeping exact: the floating-point projection is only taken when a
//! position has to be compared against plane geometry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The golden ratio (1 + √5) / 2 rounded to the nearest double.
pub const PHI: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("integer overflow in golden-ring arithmetic")]
    Overflow,
}

/// An element `a + b·φ` of Z[φ].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoldenNum {
    pub a: i64,
    pub b: i64,
}

impl GoldenNum {
    pub const ZERO: GoldenNum = GoldenNum { a: 0, b: 0 };
    pub const ONE: GoldenNum = GoldenNum { a: 1, b: 0 };
    pub const PHI: GoldenNum = GoldenNum { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        GoldenNum { a, b }
    }

    pub const fn int(a: i64) -> Self {
        GoldenNum { a, b: 0 }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, GoldenError> {
        Ok(GoldenNum {
            a: self.a.checked_add(rhs.a).ok_or(GoldenError::Overflow)?,
            b: self.b.checked_add(rhs.b).ok_or(GoldenError::Overflow)?,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, GoldenError> {
        Ok(GoldenNum {
            a: self.a.checked_sub(rhs.a).ok_or(GoldenError::Overflow)?,
            b: self.b.checked_sub(rhs.b).ok_or(GoldenError::Overflow)?,
        })
    }

    pub fn checked_neg(self) -> Result<Self, GoldenError> {
        Ok(GoldenNum {
            a: self.a.checked_neg().ok_or(GoldenError::Overflow)?,
            b: self.b.checked_neg().ok_or(GoldenError::Overflow)?,
        })
    }

    /// Product reduced with φ² = 1 + φ:
    /// `(a₁ + b₁φ)(a₂ + b₂φ) = (a₁a₂ + b₁b₂) + (a₁b₂ + a₂b₁ + b₁b₂)φ`.
    pub fn checked_mul(self, rhs: Self) -> Result<Self, GoldenError> {
        let m = |x: i64, y: i64| x.checked_mul(y).ok_or(GoldenError::Overflow);
        let bb = m(self.b, rhs.b)?;
        let a = m(self.a, rhs.a)?.checked_add(bb).ok_or(GoldenError::Overflow)?;
        let b = m(self.a, rhs.b)?
            .checked_add(m(rhs.a, self.b)?)
            .and_then(|s| s.checked_add(bb))
            .ok_or(GoldenError::Overflow)?;
        Ok(GoldenNum { a, b })
    }

    pub fn checked_scale(self, k: i64) -> Result<Self, GoldenError> {
        self.checked_mul(GoldenNum::int(k))
    }

    /// Nearest double to `a + b·φ` (single rounding through a fused multiply-add).
    pub fn to_f64(self) -> f64 {
        (self.b as f64).mul_add(PHI, self.a as f64)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl fmt::Display for GoldenNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}φ"),
            (a, b) if b < 0 => write!(f, "{a}-{}φ", -b),
            (a, b) => write!(f, "{a}+{b}φ"),
        }
    }
}

// Operator forms panic on overflow instead of wrapping; use the checked
// methods where the inputs are not known to be small.
impl Add for GoldenNum {
    type Output = GoldenNum;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("golden add overflow")
    }
}

impl Sub for GoldenNum {
    type Output = GoldenNum;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("golden sub overflow")
    }
}

impl Mul for GoldenNum {
    type Output = GoldenNum;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("golden mul overflow")
    }
}

impl Neg for GoldenNum {
    type Output = GoldenNum;
    fn neg(self) -> Self {
        self.checked_neg().expect("golden neg overflow")
    }
}

pub fn gold_add(x: GoldenNum, y: GoldenNum) -> Result<GoldenNum, GoldenError> {
    x.checked_add(y)
}

pub fn gold_mul(x: GoldenNum, y: GoldenNum) -> Result<GoldenNum, GoldenError> {
    x.checked_mul(y)
}

/// A plane point with Zome coordinates, stored as its lifted integer form
/// `(α₁, β₁, α₂, β₂)` for `(α₁ + β₁φ, α₂ + β₂φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZomePoint {
    pub lifted: [i64; 4],
}

impl ZomePoint {
    pub const ORIGIN: ZomePoint = ZomePoint { lifted: [0; 4] };

    pub const fn new(a1: i64, b1: i64, a2: i64, b2: i64) -> Self {
        ZomePoint { lifted: [a1, b1, a2, b2] }
    }

    pub fn from_coords(x: GoldenNum, y: GoldenNum) -> Self {
        ZomePoint::new(x.a, x.b, y.a, y.b)
    }

    pub fn x(&self) -> GoldenNum {
        GoldenNum::new(self.lifted[0], self.lifted[1])
    }

    pub fn y(&self) -> GoldenNum {
        GoldenNum::new(self.lifted[2], self.lifted[3])
    }

    pub fn project(&self) -> [f64; 2] {
        [self.x().to_f64(), self.y().to_f64()]
    }

    pub fn checked_add(&self, other: &ZomePoint) -> Result<ZomePoint, GoldenError> {
        let mut out = [0i64; 4];
        for (o, (a, b)) in out.iter_mut().zip(self.lifted.iter().zip(&other.lifted)) {
            *o = a.checked_add(*b).ok_or(GoldenError::Overflow)?;
        }
        Ok(ZomePoint { lifted: out })
    }

    pub fn checked_sub(&self, other: &ZomePoint) -> Result<ZomePoint, GoldenError> {
        let mut out = [0i64; 4];
        for (o, (a, b)) in out.iter_mut().zip(self.lifted.iter().zip(&other.lifted)) {
            *o = a.checked_sub(*b).ok_or(GoldenError::Overflow)?;
        }
        Ok(ZomePoint { lifted: out })
    }

    /// `self + k·v`, exact.
    pub fn checked_add_scaled(&self, v: &ZomePoint, k: i64) -> Result<ZomePoint, GoldenError> {
        let mut out = [0i64; 4];
        for i in 0..4 {
            out[i] = v.lifted[i]
                .checked_mul(k)
                .and_then(|t| t.checked_add(self.lifted[i]))
                .ok_or(GoldenError::Overflow)?;
        }
        Ok(ZomePoint { lifted: out })
    }

    pub fn is_origin(&self) -> bool {
        self.lifted == [0; 4]
    }
}

pub fn project_to_plane(p: &ZomePoint) -> [f64; 2] {
    p.project()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrutColor {
    Blue,
    Red,
    Yellow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrutLength {
    Short,
    Medium,
    Long,
}

impl StrutColor {
    pub const ALL: [StrutColor; 3] = [StrutColor::Blue, StrutColor::Red, StrutColor::Yellow];

    pub fn name(self) -> &'static str {
        match self {
            StrutColor::Blue => "blue",
            StrutColor::Red => "red",
            StrutColor::Yellow => "yellow",
        }
    }
}

impl StrutLength {
    pub const ALL: [StrutLength; 3] = [StrutLength::Short, StrutLength::Medium, StrutLength::Long];

    pub fn name(self) -> &'static str {
        match self {
            StrutLength::Short => "short",
            StrutLength::Medium => "medium",
            StrutLength::Long => "long",
        }
    }
}

/// What kind of edge a catalog entry is: one of the nine Zome struts, or an
/// edge of a user-supplied assembly system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrutKind {
    Zome { color: StrutColor, length: StrutLength },
    Custom { label: String },
}

/// One edge type: its admissible translation vectors ("columns"), each usable
/// with either sign, and an optional budget on the number of uses.
#[derive(Debug, Clone, PartialEq)]
pub struct StrutType {
    pub kind: StrutKind,
    /// Columns as plane vectors with golden coordinates.
    pub plane: Vec<[GoldenNum; 2]>,
    /// The same columns in lifted integer form.
    pub lifted: Vec<ZomePoint>,
    pub budget: Option<u64>,
}

impl StrutType {
    /// An edge type with the given lifted columns; the plane form is derived.
    pub fn custom(label: impl Into<String>, lifted: Vec<ZomePoint>, budget: Option<u64>) -> Self {
        let plane = lifted.iter().map(|p| [p.x(), p.y()]).collect();
        StrutType {
            kind: StrutKind::Custom { label: label.into() },
            plane,
            lifted,
            budget,
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            StrutKind::Zome { color, length } => format!("{}-{}", color.name(), length.name()),
            StrutKind::Custom { label } => label.clone(),
        }
    }

    pub fn color(&self) -> Option<StrutColor> {
        match self.kind {
            StrutKind::Zome { color, .. } => Some(color),
            StrutKind::Custom { .. } => None,
        }
    }

    pub fn num_columns(&self) -> usize {
        self.lifted.len()
    }

    pub fn plane_column(&self, j: usize) -> [f64; 2] {
        [self.plane[j][0].to_f64(), self.plane[j][1].to_f64()]
    }

    /// Euclidean length of the strut (all columns share it for Zome struts).
    pub fn length(&self) -> f64 {
        let [x, y] = self.plane_column(0);
        x.hypot(y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A single strut use: edge type, column and direction. Ordering is catalog
/// order, which the arrangement code uses to break ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedStrut {
    pub type_index: usize,
    pub column: usize,
    pub sign: Sign,
}

/// The edge types a model may use. The standard Zome catalog lists nine
/// struts with two base orientations each; negative directions come from the
/// sign of a use, not from extra columns.
#[derive(Debug, Clone, PartialEq)]
pub struct StrutCatalog {
    pub types: Vec<StrutType>,
}

fn g(a: i64, b: i64) -> GoldenNum {
    GoldenNum::new(a, b)
}

fn zome(color: StrutColor, length: StrutLength, plane: [[GoldenNum; 2]; 2], lifted: [[i64; 4]; 2]) -> StrutType {
    StrutType {
        kind: StrutKind::Zome { color, length },
        plane: plane.to_vec(),
        lifted: lifted.iter().map(|c| ZomePoint { lifted: *c }).collect(),
        budget: None,
    }
}

impl StrutCatalog {
    /// The nine planar Zome struts at scale b_short = 2.
    ///
    /// Columns are the two base orientations. For red and yellow the first
    /// column points below the x-axis and the second above it.
    pub fn standard() -> Self {
        use StrutColor::*;
        use StrutLength::*;
        let types = vec![
            zome(Blue, Short, [[g(2, 0), g(0, 0)], [g(0, 0), g(2, 0)]], [[2, 0, 0, 0], [0, 0, 2, 0]]),
            zome(Blue, Medium, [[g(0, 2), g(0, 0)], [g(0, 0), g(0, 2)]], [[0, 2, 0, 0], [0, 0, 0, 2]]),
            zome(Blue, Long, [[g(2, 2), g(0, 0)], [g(0, 0), g(2, 2)]], [[2, 2, 0, 0], [0, 0, 2, 2]]),
            zome(Red, Short, [[g(0, 1), g(-1, 0)], [g(0, 1), g(1, 0)]], [[0, 1, -1, 0], [0, 1, 1, 0]]),
            zome(Red, Medium, [[g(1, 1), g(0, -1)], [g(1, 1), g(0, 1)]], [[1, 1, 0, -1], [1, 1, 0, 1]]),
            zome(Red, Long, [[g(1, 2), g(-1, -1)], [g(1, 2), g(1, 1)]], [[1, 2, -1, -1], [1, 2, 1, 1]]),
            zome(Yellow, Short, [[g(-1, 1), g(0, -1)], [g(-1, 1), g(0, 1)]], [[-1, 1, 0, -1], [-1, 1, 0, 1]]),
            zome(Yellow, Medium, [[g(1, 0), g(-1, -1)], [g(1, 0), g(1, 1)]], [[1, 0, -1, -1], [1, 0, 1, 1]]),
            zome(Yellow, Long, [[g(0, 1), g(-1, -2)], [g(0, 1), g(1, 2)]], [[0, 1, -1, -2], [0, 1, 1, 2]]),
        ];
        StrutCatalog { types }
    }

    pub fn custom(types: Vec<StrutType>) -> Self {
        StrutCatalog { types }
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn total_columns(&self) -> usize {
        self.types.iter().map(StrutType::num_columns).sum()
    }

    pub fn find(&self, color: StrutColor, length: StrutLength) -> Option<usize> {
        self.types
            .iter()
            .position(|t| t.kind == StrutKind::Zome { color, length })
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.types.iter().position(|t| t.label() == label)
    }

    pub fn has_budgets(&self) -> bool {
        self.types.iter().any(|t| t.budget.is_some())
    }

    pub fn with_budgets<I>(mut self, budgets: I) -> Self
    where
        I: IntoIterator<Item = (usize, u64)>,
    {
        for (i, b) in budgets {
            self.types[i].budget = Some(b);
        }
        self
    }

    /// Lifted vector of a signed strut use.
    pub fn lifted(&self, s: &SignedStrut) -> ZomePoint {
        let c = self.types[s.type_index].lifted[s.column];
        let f = s.sign.factor();
        ZomePoint::new(c.lifted[0] * f, c.lifted[1] * f, c.lifted[2] * f, c.lifted[3] * f)
    }

    pub fn plane(&self, s: &SignedStrut) -> [f64; 2] {
        let [x, y] = self.types[s.type_index].plane_column(s.column);
        let f = s.sign.factor() as f64;
        [x * f, y * f]
    }

    /// Every signed column in catalog order.
    pub fn signed_struts(&self) -> Vec<SignedStrut> {
        let mut out = Vec::with_capacity(2 * self.total_columns());
        for (type_index, t) in self.types.iter().enumerate() {
            for column in 0..t.num_columns() {
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(SignedStrut { type_index, column, sign });
                }
            }
        }
        out
    }

    /// Length of the longest strut in the catalog.
    pub fn max_length(&self) -> f64 {
        self.types
            .iter()
            .flat_map(|t| (0..t.num_columns()).map(move |j| t.plane_column(j)))
            .map(|[x, y]| x.hypot(y))
            .fold(0.0, f64::max)
    }
}

/// Length of the long blue strut, `2 + 2φ`.
pub fn long_blue_length() -> f64 {
    GoldenNum::new(2, 2).to_f64()
}
