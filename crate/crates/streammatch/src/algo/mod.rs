//! The streaming matching algorithms and their shared parameter types.

mod augment;
mod greedy;
mod one_pass;
mod two_pass;

pub use augment::{augment_with_wings, WingError};
pub use greedy::{greedy, random_subset_greedy, semi};
pub use one_pass::one_pass_random_order;
pub use two_pass::{two_pass_deterministic, two_pass_randomized};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::generators::SplitMix64;
use crate::matching::Matching;
use crate::stream::StreamError;

/// Phase fractions for the one-pass algorithm.
pub const DEFAULT_ALPHA: f64 = 0.4312;
pub const DEFAULT_BETA: f64 = 0.7595;
/// Default sampling probability for the randomized two-pass algorithm:
/// the double nearest to sqrt(2) - 1.
pub const DEFAULT_SUBSET_P: f64 = 0.414_213_562_373_095_15;
/// Default B-side degree cap for semi-matchings and the deterministic
/// two-pass algorithm.
pub const DEFAULT_SEMI_LAMBDA: usize = 3;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("lambda must be at least {min}, got {got}")]
    LambdaTooSmall { min: usize, got: usize },
    #[error("probability must lie in [0, 1], got {got}")]
    ProbabilityOutOfRange { got: f64 },
    #[error("phase split requires 0 <= alpha <= 1/2 < beta < 1, got alpha={alpha} beta={beta}")]
    InvalidPhaseSplit { alpha: f64, beta: f64 },
}

/// Parameter or stream failure from an algorithm entry point.
#[derive(Debug, Error, PartialEq)]
pub enum AlgoError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Stream(#[from] StreamError),
}

/// The two phase boundaries of the one-pass algorithm, as fractions of the
/// stream length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSplit {
    alpha: f64,
    beta: f64,
}

impl PhaseSplit {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, ParamError> {
        if (0.0..=0.5).contains(&alpha) && 0.5 < beta && beta < 1.0 {
            Ok(Self { alpha, beta })
        } else {
            Err(ParamError::InvalidPhaseSplit { alpha, beta })
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Floored phase boundaries for a stream of `m` edges: the first phase is
    /// the first `floor(alpha * m)` arrivals, the second ends after
    /// `floor(beta * m)` arrivals.
    pub fn cuts(&self, m: usize) -> (usize, usize) {
        let cut1 = (self.alpha * m as f64).floor() as usize;
        let cut2 = (self.beta * m as f64).floor() as usize;
        (cut1, cut2)
    }
}

impl Default for PhaseSplit {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            beta: DEFAULT_BETA,
        }
    }
}

/// An O(1)-membership edge predicate defined by an allowed vertex set on
/// each side; stores one bit per vertex.
#[derive(Debug, Clone)]
pub struct EdgeFilter {
    allow_a: FixedBitSet,
    allow_b: FixedBitSet,
}

impl EdgeFilter {
    pub fn new(allow_a: FixedBitSet, allow_b: FixedBitSet) -> Self {
        Self { allow_a, allow_b }
    }

    pub fn allows(&self, a: usize, b: usize) -> bool {
        self.allow_a.contains(a) && self.allow_b.contains(b)
    }
}

/// Filter selecting candidate right wings of `m0`: edges whose A endpoint is
/// free and whose B endpoint is matched.
pub(crate) fn right_wing_filter(m0: &Matching) -> EdgeFilter {
    let mut allow_a = FixedBitSet::with_capacity(m0.n_a());
    for a in 0..m0.n_a() {
        if !m0.covers_a(a) {
            allow_a.insert(a);
        }
    }
    let mut allow_b = FixedBitSet::with_capacity(m0.n_b());
    for b in 0..m0.n_b() {
        if m0.covers_b(b) {
            allow_b.insert(b);
        }
    }
    EdgeFilter::new(allow_a, allow_b)
}

/// Filter selecting candidate left wings: edges from an explicitly allowed
/// A subset to the B vertices free in `m0`.
pub(crate) fn left_wing_filter(m0: &Matching, allow_a: FixedBitSet) -> EdgeFilter {
    let mut allow_b = FixedBitSet::with_capacity(m0.n_b());
    for b in 0..m0.n_b() {
        if !m0.covers_b(b) {
            allow_b.insert(b);
        }
    }
    EdgeFilter::new(allow_a, allow_b)
}

/// A random subset of the A side with independent inclusion probability `p`.
#[derive(Debug, Clone)]
pub struct SubsetSample {
    p: f64,
    members: FixedBitSet,
}

impl SubsetSample {
    /// Builds a sample from explicit members; mainly for tests that need to
    /// force a particular subset.
    pub fn from_members(p: f64, members: FixedBitSet) -> Self {
        Self { p, members }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn n_a(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn member_count(&self) -> usize {
        self.members.count_ones(..)
    }
}

/// Draws the subset: vertex `a` joins iff the `a`-th splitmix64 output,
/// taken as an unsigned 64-bit value, is below `floor(p * 2^64)`. Draws are
/// consumed in vertex order `0..n_a`.
pub fn sample_vertex_subset(n_a: usize, p: f64, seed: u64) -> Result<SubsetSample, ParamError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ParamError::ProbabilityOutOfRange { got: p });
    }
    // p * 2^64 is exact in f64 (power-of-two scaling), so the floor and the
    // u128 widening are too.
    let threshold = (p * 18_446_744_073_709_551_616.0) as u128;
    let mut rng = SplitMix64::new(seed);
    let mut members = FixedBitSet::with_capacity(n_a);
    for a in 0..n_a {
        if u128::from(rng.next_u64()) < threshold {
            members.insert(a);
        }
    }
    Ok(SubsetSample { p, members })
}
