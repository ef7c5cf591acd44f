//! Text formats for graphs and arrival orders.
//!
//! Graph files are line-oriented with LF endings: a header `n_a n_b m`
//! followed by exactly `m` lines `a b` (decimal, 0-based, single spaces,
//! no comments, no trailing whitespace). The order in which edges appear in
//! the file is the arrival order. Order files hold one edge index per line.

use thiserror::Error;

use crate::graph::{ArrivalOrder, BipartiteGraph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line 1: malformed header (expected \"n_a n_b m\")")]
    MalformedHeader,
    #[error("line {line}: malformed edge (expected \"a b\")")]
    MalformedEdge { line: usize },
    #[error("line {line}: endpoint ({a}, {b}) out of range for sides {n_a} x {n_b}")]
    EndpointOutOfRange {
        line: usize,
        a: usize,
        b: usize,
        n_a: usize,
        n_b: usize,
    },
    #[error("line {line}: duplicate edge ({a}, {b})")]
    DuplicateEdge { line: usize, a: usize, b: usize },
    #[error("header declares {expected} edges but the file lists {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("file does not end with a newline")]
    MissingFinalNewline,
    #[error("line {line}: malformed order entry (expected one edge index)")]
    MalformedOrderEntry { line: usize },
    #[error("order file is not a permutation of 0..{expected}: {problem}")]
    InvalidOrder { expected: usize, problem: String },
}

fn parse_fields<const N: usize>(line: &str) -> Option<[usize; N]> {
    let mut out = [0usize; N];
    let mut fields = line.split(' ');
    for slot in &mut out {
        let field = fields.next()?;
        if field.is_empty() {
            return None;
        }
        *slot = field.parse().ok()?;
    }
    fields.next().is_none().then_some(out)
}

/// Splits LF-terminated text into lines; callers reject text without a
/// final newline first.
fn strict_lines(text: &str) -> Vec<&str> {
    if text.is_empty() {
        return Vec::new();
    }
    let body = text.strip_suffix('\n').unwrap_or(text);
    body.split('\n').collect()
}

/// Parses a graph file. The returned order is the identity: the file's own
/// edge order is the arrival order.
pub fn read_graph(text: &str) -> Result<(BipartiteGraph, ArrivalOrder), ParseError> {
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(ParseError::MissingFinalNewline);
    }
    let lines = strict_lines(text);
    let header = lines.first().ok_or(ParseError::MalformedHeader)?;
    let [n_a, n_b, m] = parse_fields(header).ok_or(ParseError::MalformedHeader)?;
    let edge_lines = &lines[1..];
    if edge_lines.len() != m {
        return Err(ParseError::WrongEdgeCount {
            expected: m,
            found: edge_lines.len(),
        });
    }
    let mut edges = Vec::with_capacity(m);
    for (i, line) in edge_lines.iter().enumerate() {
        let [a, b] = parse_fields(line).ok_or(ParseError::MalformedEdge { line: i + 2 })?;
        edges.push((a, b));
    }
    let graph = BipartiteGraph::new(n_a, n_b, edges).map_err(|e| match e {
        GraphError::EndpointOutOfRange { index, a, b, n_a, n_b } => ParseError::EndpointOutOfRange {
            line: index + 2,
            a,
            b,
            n_a,
            n_b,
        },
        GraphError::DuplicateEdge { index, a, b } => ParseError::DuplicateEdge {
            line: index + 2,
            a,
            b,
        },
    })?;
    let order = ArrivalOrder::identity(m);
    Ok((graph, order))
}

/// Renders a graph file with edges listed in arrival order, so reading it
/// back reproduces the same stream under the identity order.
pub fn write_graph(graph: &BipartiteGraph, order: &ArrivalOrder) -> String {
    assert_eq!(order.len(), graph.m(), "order must cover every edge");
    let mut out = format!("{} {} {}\n", graph.n_a(), graph.n_b(), graph.m());
    for &idx in order.perm() {
        let (a, b) = graph.edge(idx);
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Parses an order file: one edge index per line, forming a permutation of
/// `0..m`.
pub fn read_order(text: &str, m: usize) -> Result<ArrivalOrder, ParseError> {
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(ParseError::MissingFinalNewline);
    }
    let lines = strict_lines(text);
    let mut perm = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let [idx] = parse_fields(line).ok_or(ParseError::MalformedOrderEntry { line: i + 1 })?;
        perm.push(idx);
    }
    if perm.len() != m {
        return Err(ParseError::InvalidOrder {
            expected: m,
            problem: format!("has {} entries", perm.len()),
        });
    }
    ArrivalOrder::new(perm).map_err(|e| ParseError::InvalidOrder {
        expected: m,
        problem: e.problem,
    })
}

pub fn write_order(order: &ArrivalOrder) -> String {
    let mut out = String::new();
    for &idx in order.perm() {
        out.push_str(&format!("{idx}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_round_trip() {
        let (g, order) = read_graph("1 1 1\n0 0\n").unwrap();
        assert_eq!((g.n_a(), g.n_b(), g.m()), (1, 1, 1));
        assert_eq!(g.edges(), &[(0, 0)]);
        assert_eq!(order.perm(), &[0]);
        assert_eq!(write_graph(&g, &order), "1 1 1\n0 0\n");
    }

    #[test]
    fn write_read_is_identity_on_canonical_text() {
        let text = "2 3 4\n0 0\n0 2\n1 1\n1 0\n";
        let (g, o) = read_graph(text).unwrap();
        assert_eq!(write_graph(&g, &o), text);
    }

    #[test]
    fn permuted_write_preserves_stream() {
        let g = BipartiteGraph::new(2, 2, vec![(0, 0), (1, 1), (0, 1)]).unwrap();
        let o = ArrivalOrder::new(vec![2, 0, 1]).unwrap();
        let text = write_graph(&g, &o);
        let (g2, o2) = read_graph(&text).unwrap();
        let original: Vec<_> = o.perm().iter().map(|&i| g.edge(i)).collect();
        let reread: Vec<_> = o2.perm().iter().map(|&i| g2.edge(i)).collect();
        assert_eq!(original, reread);
        let mut set_a = g.edges().to_vec();
        let mut set_b = g2.edges().to_vec();
        set_a.sort_unstable();
        set_b.sort_unstable();
        assert_eq!(set_a, set_b);
    }

    #[test]
    fn duplicate_edge_is_rejected() {
        let err = read_graph("2 2 3\n0 0\n0 0\n1 1\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::DuplicateEdge {
                line: 3,
                a: 0,
                b: 0
            }
        );
    }

    #[test]
    fn malformed_header_variants() {
        assert_eq!(read_graph("").unwrap_err(), ParseError::MalformedHeader);
        assert_eq!(read_graph("1 1\n").unwrap_err(), ParseError::MalformedHeader);
        assert_eq!(
            read_graph("1 1 1 1\n0 0\n").unwrap_err(),
            ParseError::MalformedHeader
        );
        assert_eq!(
            read_graph("a 1 1\n0 0\n").unwrap_err(),
            ParseError::MalformedHeader
        );
    }

    #[test]
    fn wrong_edge_count() {
        assert_eq!(
            read_graph("1 1 2\n0 0\n").unwrap_err(),
            ParseError::WrongEdgeCount {
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            read_graph("1 1 0\n0 0\n").unwrap_err(),
            ParseError::WrongEdgeCount {
                expected: 0,
                found: 1
            }
        );
    }

    #[test]
    fn out_of_range_endpoint() {
        assert!(matches!(
            read_graph("1 1 1\n0 1\n").unwrap_err(),
            ParseError::EndpointOutOfRange { line: 2, .. }
        ));
    }

    #[test]
    fn trailing_whitespace_is_malformed() {
        assert!(matches!(
            read_graph("1 1 1\n0 0 \n").unwrap_err(),
            ParseError::MalformedEdge { line: 2 }
        ));
        assert_eq!(
            read_graph("1 1 1\n0 0").unwrap_err(),
            ParseError::MissingFinalNewline
        );
    }

    #[test]
    fn order_file_round_trip() {
        let o = ArrivalOrder::new(vec![2, 0, 1]).unwrap();
        let text = write_order(&o);
        assert_eq!(text, "2\n0\n1\n");
        assert_eq!(read_order(&text, 3).unwrap(), o);
        assert!(read_order(&text, 4).is_err());
        assert!(read_order("0\n0\n1\n", 3).is_err());
    }
}
