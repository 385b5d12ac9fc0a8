//! Periodic wall data on a flat.
//!
//! A rank-`p` lattice acts by translations on a flat `E = R^p`. The walls
//! meeting `E` fall into parallelism classes; each class has a primitive
//! integer normal `n`, a period `P`, and finitely many orbit representatives
//! at offsets `o_j` in `[0, P)`. Translate `t` of representative `j` is the
//! wall `n . x = o_j + t P`. Whether two walls of one class cross is not
//! visible in `E` and is supplied as a [`CrossingInterval`] per ordered pair
//! of representatives: wall `(j, t)` crosses wall `(j', t')` iff
//! `t - t'` lies in the interval. Walls of different classes always cross.
//!
//! The lattice is `Z^p`; a vector `v` moves every wall of class `i` by
//! `n . v / P` translates, which must be an integer.

mod classify;
mod dichotomy;
mod pushoff;
mod quasiline;
mod schema;
mod validate;
mod window;

pub use classify::{alignment_classes, alignment_partition, classify_pair, disjointness_index};
pub use dichotomy::{
    dichotomy, DichotomyReport, ExcessClassesWitness, ProductCertificate, QuasilineFactor,
    SemiCrossingWitness, Verdict, Witness,
};
pub use pushoff::{pushoff, Pushoff, PushoffAudit};
pub use quasiline::{quasiline_certificate, quasiline_width};
pub use schema::{ClassJson, IntervalJson, PeriodicWallspaceJson};
pub use validate::{validate, Lemma, ValidationError};
pub use window::{window_hull, WindowHull, WindowWall};

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::sageev::DualError;

pub type Rational = Ratio<i64>;

/// Largest window hull that will be materialised.
pub const MAX_WINDOW_VERTICES: usize = 2_000_000;

/// Set of translate differences `d` for which two walls cross.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CrossingInterval {
    Empty,
    Finite { lo: i64, hi: i64 },
    AtLeast { lo: i64 },
    AtMost { hi: i64 },
    All,
}

impl CrossingInterval {
    pub fn contains(&self, d: i64) -> bool {
        match *self {
            CrossingInterval::Empty => false,
            CrossingInterval::Finite { lo, hi } => lo <= d && d <= hi,
            CrossingInterval::AtLeast { lo } => d >= lo,
            CrossingInterval::AtMost { hi } => d <= hi,
            CrossingInterval::All => true,
        }
    }

    /// The interval `{-d : d in self}`.
    pub fn negate(&self) -> CrossingInterval {
        match *self {
            CrossingInterval::Empty => CrossingInterval::Empty,
            CrossingInterval::Finite { lo, hi } => CrossingInterval::Finite { lo: -hi, hi: -lo },
            CrossingInterval::AtLeast { lo } => CrossingInterval::AtMost { hi: -lo },
            CrossingInterval::AtMost { hi } => CrossingInterval::AtLeast { lo: -hi },
            CrossingInterval::All => CrossingInterval::All,
        }
    }

    /// Only finitely many translates cross.
    pub fn is_bounded(&self) -> bool {
        matches!(self, CrossingInterval::Empty | CrossingInterval::Finite { .. })
    }

    /// Largest absolute finite endpoint, 0 if there is none.
    pub fn max_bound(&self) -> i64 {
        match *self {
            CrossingInterval::Finite { lo, hi } => lo.abs().max(hi.abs()),
            CrossingInterval::AtLeast { lo } => lo.abs(),
            CrossingInterval::AtMost { hi } => hi.abs(),
            _ => 0,
        }
    }
}

/// One parallelism class of walls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClass {
    pub direction: Vec<i64>,
    pub period: Rational,
    pub reps: Vec<Rational>,
    /// `crossing[j][j2]` for representatives `j`, `j2`. Self entries exclude 0
    /// implicitly: a wall never crosses itself.
    pub crossing: Vec<Vec<CrossingInterval>>,
}

impl ParallelClass {
    pub fn interval(&self, j: usize, j2: usize) -> CrossingInterval {
        self.crossing[j][j2]
    }

    /// Whether translate `t` of rep `j` crosses translate `t2` of rep `j2`.
    pub fn walls_cross(&self, j: usize, t: i64, j2: usize, t2: i64) -> bool {
        if j == j2 && t == t2 {
            return false;
        }
        self.crossing[j][j2].contains(t - t2)
    }

    /// Position `o_j + t P` of a wall along the class normal.
    pub fn position(&self, j: usize, t: i64) -> Rational {
        self.reps[j] + self.period * t
    }

    pub fn max_bound(&self) -> i64 {
        self.crossing
            .iter()
            .flatten()
            .map(|c| c.max_bound())
            .max()
            .unwrap_or(0)
    }
}

/// Periodic walls on a flat of rank `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicWallspace {
    pub rank: usize,
    pub classes: Vec<ParallelClass>,
}

/// Orbit representative `rep` of parallelism class `class`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WallRef {
    pub class: usize,
    pub rep: usize,
}

impl WallRef {
    pub fn new(class: usize, rep: usize) -> Self {
        WallRef { class, rep }
    }
}

impl std::fmt::Display for WallRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.class, self.rep)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// How two wall orbits relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitPairClass {
    Crossing,
    /// `Up`: translate `t` of `a` crosses translate `t'` of `b` exactly when
    /// `t - t' > threshold`. `Down`: exactly when `t' - t > threshold`.
    SemiCrossing { direction: Direction, threshold: i64 },
    Aligned,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatError {
    #[error("malformed input: {0}")]
    Schema(String),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("unknown wall reference {0}")]
    UnknownRef(WallRef),
    #[error("orbits {0} and {1} semi-cross; alignment classes need semi-crossing-free data")]
    SemiCrossingPresent(WallRef, WallRef),
    #[error("window radius must be at least {min}, got {n}")]
    WindowTooSmall { n: i64, min: i64 },
    #[error("rank {rank} must lie in 1..={p}")]
    BadRank { rank: usize, p: usize },
    #[error("orbits {0:?} do not form an alignment class")]
    NotAlignmentClass(Vec<WallRef>),
    #[error("alignment class is not maximal: {above} > {below}")]
    NotMaximal { above: WallRef, below: WallRef },
    #[error("shift k={0} must be positive")]
    NonPositiveShift(i64),
    #[error("shift k={k} escapes the window N={n} (need 2k <= N)")]
    ShiftEscapesWindow { k: i64, n: i64 },
    #[error("push-off audit failed: {0}")]
    Audit(String),
    #[error("no bounded quasiline width: {widths:?} at windows {windows:?}")]
    QuasilineFailure { widths: Vec<usize>, windows: Vec<i64> },
    #[error("verdict changes between windows {0} and {1}")]
    Unstable(i64, i64),
    #[error("integer overflow in window arithmetic")]
    Overflow,
    #[error(transparent)]
    Dual(#[from] DualError),
}

impl PeriodicWallspace {
    pub fn class(&self, r: WallRef) -> Result<&ParallelClass, FlatError> {
        self.classes
            .get(r.class)
            .filter(|c| r.rep < c.reps.len())
            .ok_or(FlatError::UnknownRef(r))
    }

    /// All orbit representatives in (class, rep) order.
    pub fn refs(&self) -> Vec<WallRef> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| (0..c.reps.len()).map(move |j| WallRef::new(i, j)))
            .collect()
    }
}

pub(crate) fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
