//! Bipartite graph and edge arrival order.

use std::collections::HashSet;

use thiserror::Error;

/// Errors raised when constructing a [`BipartiteGraph`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index} = ({a}, {b}) out of range for sides {n_a} x {n_b}")]
    EndpointOutOfRange {
        index: usize,
        a: usize,
        b: usize,
        n_a: usize,
        n_b: usize,
    },
    #[error("duplicate edge ({a}, {b}) at position {index}")]
    DuplicateEdge { index: usize, a: usize, b: usize },
}

/// An immutable bipartite graph: `n_a` left vertices, `n_b` right vertices,
/// and an ordered list of distinct `(a, b)` edges. The list position of an
/// edge is its identity; arrival orders permute these positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_a: usize,
    n_b: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    /// Builds a graph, rejecting out-of-range endpoints and duplicate edges.
    pub fn new(n_a: usize, n_b: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        for (index, &(a, b)) in edges.iter().enumerate() {
            if a >= n_a || b >= n_b {
                return Err(GraphError::EndpointOutOfRange { index, a, b, n_a, n_b });
            }
            if !seen.insert((a, b)) {
                return Err(GraphError::DuplicateEdge { index, a, b });
            }
        }
        Ok(Self { n_a, n_b, edges })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }
}

/// Error raised when a sequence is not a permutation of `0..m`.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("sequence of length {len} is not a permutation of 0..{len}: {problem}")]
pub struct OrderError {
    pub len: usize,
    pub problem: String,
}

/// A permutation of edge indices. Position `i` holds the index of the edge
/// arriving `i`-th in the stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrivalOrder {
    perm: Vec<usize>,
}

impl ArrivalOrder {
    /// Validates that `perm` is a bijection on `0..perm.len()`.
    pub fn new(perm: Vec<usize>) -> Result<Self, OrderError> {
        let len = perm.len();
        let mut seen = vec![false; len];
        for &idx in &perm {
            if idx >= len {
                return Err(OrderError {
                    len,
                    problem: format!("index {idx} out of range"),
                });
            }
            if seen[idx] {
                return Err(OrderError {
                    len,
                    problem: format!("index {idx} repeated"),
                });
            }
            seen[idx] = true;
        }
        Ok(Self { perm })
    }

    /// The order in which edges appear in the graph's own edge list.
    pub fn identity(m: usize) -> Self {
        Self {
            perm: (0..m).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = BipartiteGraph::new(2, 2, vec![(0, 0), (2, 1)]).unwrap_err();
        assert!(matches!(err, GraphError::EndpointOutOfRange { index: 1, .. }));
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = BipartiteGraph::new(2, 2, vec![(0, 0), (1, 1), (0, 0)]).unwrap_err();
        assert_eq!(
            err,
            GraphError::DuplicateEdge {
                index: 2,
                a: 0,
                b: 0
            }
        );
    }

    #[test]
    fn accepts_empty_graph() {
        let g = BipartiteGraph::new(0, 0, vec![]).unwrap();
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn order_must_be_permutation() {
        assert!(ArrivalOrder::new(vec![0, 2, 1]).is_ok());
        assert!(ArrivalOrder::new(vec![0, 0, 1]).is_err());
        assert!(ArrivalOrder::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn identity_order() {
        let o = ArrivalOrder::identity(4);
        assert_eq!(o.perm(), &[0, 1, 2, 3]);
    }
}
