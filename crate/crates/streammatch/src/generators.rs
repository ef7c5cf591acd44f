//! Seeded pseudorandomness, arrival orders, and instance families.
//!
//! All randomness in the crate flows through [`SplitMix64`] so that every
//! graph, order, and vertex sample is reproducible bit-for-bit from its seed
//! on any platform.

use thiserror::Error;

use crate::graph::{ArrivalOrder, BipartiteGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("requested {requested} distinct edges but the graph holds at most {capacity}")]
    EdgeBudgetExceeded { requested: usize, capacity: usize },
}

/// The splitmix64 generator: a 64-bit counter scrambled by two
/// multiply-xorshift rounds. Tiny state, full 2^64 period, and identical
/// output everywhere, which is all the harness needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound` via modulo. The bias is below 2^-50
    /// relative for bounds up to 10^6; accepted in exchange for bit-exact
    /// reproducibility across languages.
    pub fn next_below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }
}

/// Fisher-Yates shuffle of `0..m`: for `i` from `m-1` down to `1`, swap
/// position `i` with position `next_below(i + 1)`.
pub fn uniform_order(m: usize, seed: u64) -> ArrivalOrder {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut rng = SplitMix64::new(seed);
    for i in (1..m).rev() {
        let j = rng.next_below(i + 1);
        perm.swap(i, j);
    }
    ArrivalOrder::new(perm).expect("shuffle of a permutation is a permutation")
}

/// The greedy-tight family: sides of size `2n`, the diagonal perfect matching
/// `(i, i)`, plus `n` trap edges `(i, n+i)`. Under the returned adversarial
/// order (traps first, then diagonals, each block ascending) greedy locks in
/// exactly the `n` traps while the optimum is `2n`.
pub fn half_trap(n: usize) -> (BipartiteGraph, ArrivalOrder) {
    assert!(n >= 1, "half_trap needs n >= 1");
    let side = 2 * n;
    let mut edges: Vec<(usize, usize)> = (0..side).map(|i| (i, i)).collect();
    edges.extend((0..n).map(|i| (i, n + i)));
    let graph = BipartiteGraph::new(side, side, edges).expect("construction has no duplicates");
    let perm: Vec<usize> = (side..side + n).chain(0..side).collect();
    let order = ArrivalOrder::new(perm).expect("block order is a permutation");
    (graph, order)
}

/// `m` distinct edges drawn uniformly (up to modulo bias) without
/// replacement by seeded rejection. Arrival order is generation order.
pub fn random_bipartite(
    n_a: usize,
    n_b: usize,
    m: usize,
    seed: u64,
) -> Result<BipartiteGraph, GenError> {
    let capacity = n_a.saturating_mul(n_b);
    if m > capacity {
        return Err(GenError::EdgeBudgetExceeded {
            requested: m,
            capacity,
        });
    }
    let mut rng = SplitMix64::new(seed);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let a = rng.next_below(n_a);
        let b = rng.next_below(n_b);
        if seen.insert((a, b)) {
            edges.push((a, b));
        }
    }
    Ok(BipartiteGraph::new(n_a, n_b, edges).expect("rejection sampling yields distinct edges"))
}

/// Square graph on `n + n` vertices containing the diagonal perfect matching
/// plus `d * n` further distinct random edges, so the optimum is always `n`.
pub fn perfect_plus_noise(n: usize, d: usize, seed: u64) -> Result<BipartiteGraph, GenError> {
    let extra = d.saturating_mul(n);
    let requested = n + extra;
    let capacity = n.saturating_mul(n);
    if requested > capacity {
        return Err(GenError::EdgeBudgetExceeded {
            requested,
            capacity,
        });
    }
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    let mut seen: std::collections::HashSet<(usize, usize)> = edges.iter().copied().collect();
    let mut rng = SplitMix64::new(seed);
    while edges.len() < requested {
        let a = rng.next_below(n);
        let b = rng.next_below(n);
        if seen.insert((a, b)) {
            edges.push((a, b));
        }
    }
    Ok(BipartiteGraph::new(n, n, edges).expect("distinct by construction"))
}
