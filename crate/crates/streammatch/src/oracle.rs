//! Exact maximum matching and alternating-structure analysis.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::BipartiteGraph;
use crate::matching::{is_valid_matching, Matching};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("matchings have mismatched dimensions ({0}x{1} vs {2}x{3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matching is not a matching of the given graph")]
    InvalidMatching,
    #[error("matching of size {got} is not maximal: edge ({a}, {b}) is addable")]
    NotMaximal { got: usize, a: usize, b: usize },
    #[error("matching of size {got} is not maximum (optimum is {opt})")]
    NotMaximum { got: usize, opt: usize },
}

const INF: usize = usize::MAX;

/// Maximum-cardinality matching via Hopcroft-Karp. Adjacency lists are
/// sorted and free vertices are scanned in ascending index, so the returned
/// matching is a deterministic function of the graph; only its size is
/// contractually unique.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let n_a = g.n_a();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_a];
    for &(a, b) in g.edges() {
        adj[a].push(b);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut mate_a: Vec<Option<usize>> = vec![None; n_a];
    let mut mate_b: Vec<Option<usize>> = vec![None; g.n_b()];
    let mut dist = vec![INF; n_a];
    let mut queue = VecDeque::new();

    loop {
        // BFS layering from free A vertices.
        queue.clear();
        for a in 0..n_a {
            if mate_a[a].is_none() {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = INF;
            }
        }
        let mut found_free_b = false;
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                match mate_b[b] {
                    None => found_free_b = true,
                    Some(a2) => {
                        if dist[a2] == INF {
                            dist[a2] = dist[a] + 1;
                            queue.push_back(a2);
                        }
                    }
                }
            }
        }
        if !found_free_b {
            break;
        }
        // DFS along the layering, lowest free vertex first.
        for a in 0..n_a {
            if mate_a[a].is_none() {
                augment(&adj, &mut mate_a, &mut mate_b, &mut dist, a);
            }
        }
    }

    let mut m = Matching::new(n_a, g.n_b());
    for (a, b) in mate_a.iter().enumerate() {
        if let Some(b) = *b {
            assert!(m.try_insert(a, b));
        }
    }
    m
}

fn augment(
    adj: &[Vec<usize>],
    mate_a: &mut [Option<usize>],
    mate_b: &mut [Option<usize>],
    dist: &mut [usize],
    a: usize,
) -> bool {
    let d = std::mem::replace(&mut dist[a], INF);
    for &b in &adj[a] {
        let extend = match mate_b[b] {
            None => true,
            Some(a2) => dist[a2] == d + 1 && augment(adj, mate_a, mate_b, dist, a2),
        };
        if extend {
            mate_a[a] = Some(b);
            mate_b[b] = Some(a);
            return true;
        }
    }
    false
}

/// Endpoint of a decomposition edge, tagged with its side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vertex {
    A(usize),
    B(usize),
}

/// Which input matching a symmetric-difference edge came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// In the first matching only.
    InM,
    /// In the second (reference/optimal) matching only.
    InOpt,
}

/// One maximal alternating path or cycle of the symmetric difference.
/// `vertices` lists the walk; edge `i` joins `vertices[i]` and
/// `vertices[i + 1]` (wrapping around for cycles) and has tag `origins[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltComponent {
    pub is_cycle: bool,
    pub vertices: Vec<Vertex>,
    pub origins: Vec<EdgeOrigin>,
}

impl AltComponent {
    pub fn edge_count(&self) -> usize {
        self.origins.len()
    }

    /// A path that starts and ends with `InOpt` edges and alternates is an
    /// augmenting path for the first matching.
    pub fn is_augmenting_for_m(&self) -> bool {
        !self.is_cycle && self.origins.len() % 2 == 1 && self.origins[0] == EdgeOrigin::InOpt
    }
}

/// Partition of `m ⊕ opt` into maximal alternating paths and cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffDecomposition {
    pub components: Vec<AltComponent>,
}

impl DiffDecomposition {
    pub fn total_edges(&self) -> usize {
        self.components.iter().map(AltComponent::edge_count).sum()
    }

    /// Number of length-3 augmenting paths, each contributing one
    /// 3-augmentable edge of the first matching.
    pub fn length3_augmenting_paths(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.is_augmenting_for_m() && c.edge_count() == 3)
            .count()
    }
}

// Per-vertex view of the symmetric difference: at most one incident edge
// from each matching.
struct DiffAdj {
    a_m: Vec<Option<usize>>,
    a_opt: Vec<Option<usize>>,
    b_m: Vec<Option<usize>>,
    b_opt: Vec<Option<usize>>,
}

impl DiffAdj {
    fn degree(&self, v: Vertex) -> usize {
        let (m, o) = match v {
            Vertex::A(a) => (self.a_m[a], self.a_opt[a]),
            Vertex::B(b) => (self.b_m[b], self.b_opt[b]),
        };
        usize::from(m.is_some()) + usize::from(o.is_some())
    }

    fn neighbor(&self, v: Vertex, origin: EdgeOrigin) -> Option<Vertex> {
        match (v, origin) {
            (Vertex::A(a), EdgeOrigin::InM) => self.a_m[a].map(Vertex::B),
            (Vertex::A(a), EdgeOrigin::InOpt) => self.a_opt[a].map(Vertex::B),
            (Vertex::B(b), EdgeOrigin::InM) => self.b_m[b].map(Vertex::A),
            (Vertex::B(b), EdgeOrigin::InOpt) => self.b_opt[b].map(Vertex::A),
        }
    }

    fn remove(&mut self, v: Vertex, origin: EdgeOrigin) -> Option<Vertex> {
        let w = self.neighbor(v, origin)?;
        match origin {
            EdgeOrigin::InM => match (v, w) {
                (Vertex::A(a), Vertex::B(b)) | (Vertex::B(b), Vertex::A(a)) => {
                    self.a_m[a] = None;
                    self.b_m[b] = None;
                }
                _ => unreachable!("edges join opposite sides"),
            },
            EdgeOrigin::InOpt => match (v, w) {
                (Vertex::A(a), Vertex::B(b)) | (Vertex::B(b), Vertex::A(a)) => {
                    self.a_opt[a] = None;
                    self.b_opt[b] = None;
                }
                _ => unreachable!("edges join opposite sides"),
            },
        }
        Some(w)
    }
}

/// Decomposes the symmetric difference of two matchings of the same graph
/// into maximal alternating paths and cycles. Paths are discovered from
/// A-side endpoints first, then B-side, each in ascending index; cycles
/// from the lowest remaining A vertex.
pub fn decompose(m: &Matching, opt: &Matching) -> Result<DiffDecomposition, OracleError> {
    if m.n_a() != opt.n_a() || m.n_b() != opt.n_b() {
        return Err(OracleError::DimensionMismatch(
            m.n_a(),
            m.n_b(),
            opt.n_a(),
            opt.n_b(),
        ));
    }
    let n_a = m.n_a();
    let n_b = m.n_b();
    let mut adj = DiffAdj {
        a_m: vec![None; n_a],
        a_opt: vec![None; n_a],
        b_m: vec![None; n_b],
        b_opt: vec![None; n_b],
    };
    for (a, b) in m.edges() {
        if !opt.contains(a, b) {
            adj.a_m[a] = Some(b);
            adj.b_m[b] = Some(a);
        }
    }
    for (a, b) in opt.edges() {
        if !m.contains(a, b) {
            adj.a_opt[a] = Some(b);
            adj.b_opt[b] = Some(a);
        }
    }

    let mut components = Vec::new();
    let endpoints = (0..n_a).map(Vertex::A).chain((0..n_b).map(Vertex::B));
    for start in endpoints.clone() {
        if adj.degree(start) == 1 {
            components.push(walk(&mut adj, start, false));
        }
    }
    // Whatever is left has degree 2 everywhere: cycles.
    for start in endpoints {
        if adj.degree(start) == 2 {
            components.push(walk(&mut adj, start, true));
        }
    }
    Ok(DiffDecomposition { components })
}

fn walk(adj: &mut DiffAdj, start: Vertex, is_cycle: bool) -> AltComponent {
    let mut vertices = vec![start];
    let mut origins = Vec::new();
    let mut current = start;
    loop {
        let origin = [EdgeOrigin::InM, EdgeOrigin::InOpt]
            .into_iter()
            .find(|&o| adj.neighbor(current, o).is_some());
        let Some(origin) = origin else { break };
        let next = adj.remove(current, origin).expect("neighbor just probed");
        origins.push(origin);
        if is_cycle && next == start {
            break;
        }
        vertices.push(next);
        current = next;
    }
    AltComponent {
        is_cycle,
        vertices,
        origins,
    }
}

/// Number of edges of the maximal matching `m` that sit in the middle of a
/// length-3 augmenting path of `m ⊕ opt`. Preconditions are enforced: `opt`
/// must be maximum and `m` maximal, both valid for `g`.
pub fn count_3_augmentable(
    g: &BipartiteGraph,
    m: &Matching,
    opt: &Matching,
) -> Result<usize, OracleError> {
    if !is_valid_matching(g, m) || !is_valid_matching(g, opt) {
        return Err(OracleError::InvalidMatching);
    }
    let best = max_matching(g).len();
    if opt.len() != best {
        return Err(OracleError::NotMaximum {
            got: opt.len(),
            opt: best,
        });
    }
    for &(a, b) in g.edges() {
        if !m.covers_a(a) && !m.covers_b(b) {
            return Err(OracleError::NotMaximal { got: m.len(), a, b });
        }
    }
    Ok(decompose(m, opt)?.length3_augmenting_paths())
}
