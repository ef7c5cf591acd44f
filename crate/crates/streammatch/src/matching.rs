//! Matchings and degree-bounded semi-matchings.

use std::collections::HashSet;

use crate::graph::BipartiteGraph;

/// A matching: every vertex on either side is covered by at most one edge.
/// Mate lookups are O(1); the edge set is the view `(a, mate_a[a])` over all
/// matched `a`, enumerated in ascending `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate_a: Vec<Option<usize>>,
    mate_b: Vec<Option<usize>>,
    len: usize,
}

impl Matching {
    pub fn new(n_a: usize, n_b: usize) -> Self {
        Self {
            mate_a: vec![None; n_a],
            mate_b: vec![None; n_b],
            len: 0,
        }
    }

    pub fn n_a(&self) -> usize {
        self.mate_a.len()
    }

    pub fn n_b(&self) -> usize {
        self.mate_b.len()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mate_of_a(&self, a: usize) -> Option<usize> {
        self.mate_a[a]
    }

    pub fn mate_of_b(&self, b: usize) -> Option<usize> {
        self.mate_b[b]
    }

    pub fn covers_a(&self, a: usize) -> bool {
        self.mate_a[a].is_some()
    }

    pub fn covers_b(&self, b: usize) -> bool {
        self.mate_b[b].is_some()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.mate_a[a] == Some(b)
    }

    /// Greedy acceptance: inserts `(a, b)` iff both endpoints are currently
    /// unmatched. Returns whether the edge was taken.
    pub fn try_insert(&mut self, a: usize, b: usize) -> bool {
        if self.mate_a[a].is_some() || self.mate_b[b].is_some() {
            return false;
        }
        self.mate_a[a] = Some(b);
        self.mate_b[b] = Some(a);
        self.len += 1;
        true
    }

    /// Removes `(a, b)`. Returns false if the edge was not present.
    pub fn remove(&mut self, a: usize, b: usize) -> bool {
        if self.mate_a[a] != Some(b) {
            return false;
        }
        self.mate_a[a] = None;
        self.mate_b[b] = None;
        self.len -= 1;
        true
    }

    /// Edges in ascending `a` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate_a
            .iter()
            .enumerate()
            .filter_map(|(a, &b)| b.map(|b| (a, b)))
    }

    pub fn to_edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }
}

/// True iff every edge of `m` exists in `g` and both degree constraints hold.
/// The degree constraints are structural in [`Matching`], so this reduces to
/// dimension and membership checks.
pub fn is_valid_matching(g: &BipartiteGraph, m: &Matching) -> bool {
    if m.n_a() != g.n_a() || m.n_b() != g.n_b() {
        return false;
    }
    let edge_set: HashSet<(usize, usize)> = g.edges().iter().copied().collect();
    m.edges().all(|e| edge_set.contains(&e))
}

/// An incomplete degree-bounded semi-matching: each A vertex is covered at
/// most once, each B vertex at most `lambda` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiMatching {
    lambda: usize,
    mate_a: Vec<Option<usize>>,
    deg_b: Vec<usize>,
    len: usize,
}

impl SemiMatching {
    /// `lambda` must be at least 1; callers validate user input.
    pub fn new(n_a: usize, n_b: usize, lambda: usize) -> Self {
        assert!(lambda >= 1, "semi-matching requires lambda >= 1");
        Self {
            lambda,
            mate_a: vec![None; n_a],
            deg_b: vec![0; n_b],
            len: 0,
        }
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Number of edges, which equals the number of covered A vertices.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn covered_a(&self) -> usize {
        self.len
    }

    pub fn covers_a(&self, a: usize) -> bool {
        self.mate_a[a].is_some()
    }

    pub fn mate_of_a(&self, a: usize) -> Option<usize> {
        self.mate_a[a]
    }

    pub fn deg_b(&self, b: usize) -> usize {
        self.deg_b[b]
    }

    /// Acceptance rule: take `(a, b)` iff `a` is uncovered and `b` has
    /// residual capacity, i.e. its degree is at most `lambda - 1`.
    pub fn try_insert(&mut self, a: usize, b: usize) -> bool {
        if self.mate_a[a].is_some() || self.deg_b[b] > self.lambda - 1 {
            return false;
        }
        self.mate_a[a] = Some(b);
        self.deg_b[b] += 1;
        self.len += 1;
        true
    }

    /// Edges in ascending `a` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate_a
            .iter()
            .enumerate()
            .filter_map(|(a, &b)| b.map(|b| (a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> BipartiteGraph {
        BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn empty_matching_is_valid() {
        let g = k22();
        assert!(is_valid_matching(&g, &Matching::new(2, 2)));
    }

    #[test]
    fn disjoint_edges_are_valid() {
        let g = k22();
        let mut m = Matching::new(2, 2);
        assert!(m.try_insert(0, 0));
        assert!(m.try_insert(1, 1));
        assert!(is_valid_matching(&g, &m));
    }

    #[test]
    fn greedy_insert_rejects_reused_vertex() {
        let mut m = Matching::new(2, 2);
        assert!(m.try_insert(0, 0));
        assert!(!m.try_insert(0, 1));
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn edge_not_in_graph_is_invalid() {
        let g = BipartiteGraph::new(2, 2, vec![(0, 0)]).unwrap();
        let mut m = Matching::new(2, 2);
        m.try_insert(1, 1);
        assert!(!is_valid_matching(&g, &m));
    }

    #[test]
    fn remove_restores_both_mates() {
        let mut m = Matching::new(2, 2);
        m.try_insert(0, 1);
        assert!(m.remove(0, 1));
        assert!(!m.remove(0, 1));
        assert!(!m.covers_a(0));
        assert!(!m.covers_b(1));
        assert_eq!(m.len(), 0);
    }

    #[test]
    fn semi_caps_b_degree_at_lambda() {
        let mut s = SemiMatching::new(4, 1, 3);
        assert!(s.try_insert(0, 0));
        assert!(s.try_insert(1, 0));
        assert!(s.try_insert(2, 0));
        assert!(!s.try_insert(3, 0));
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![(0, 0), (1, 0), (2, 0)]);
    }

    #[test]
    fn semi_lambda_one_is_a_matching() {
        let mut s = SemiMatching::new(2, 1, 1);
        assert!(s.try_insert(0, 0));
        assert!(!s.try_insert(1, 0));
        assert_eq!(s.covered_a(), 1);
    }
}
