//! Composition of 3-augmenting paths from wing edges.

use thiserror::Error;

use crate::matching::Matching;

/// A wing-precondition violation. These indicate a bug in the calling
/// algorithm, never a property of the input graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WingError {
    #[error("right wing ({a}, {b}) has its A endpoint matched in m0")]
    RightWingAnchorMatched { a: usize, b: usize },
    #[error("right wing ({a}, {b}) has its B endpoint unmatched in m0")]
    RightWingOffMatchedB { a: usize, b: usize },
    #[error("free A vertex {a} appears in more than one right wing")]
    DuplicateRightWing { a: usize },
    #[error("left wing ({a}, {b}) has its A endpoint unmatched in m0")]
    LeftWingAnchorUnmatched { a: usize, b: usize },
    #[error("left wing ({a}, {b}) has its B endpoint matched in m0")]
    LeftWingOnMatchedB { a: usize, b: usize },
    #[error("no right wing available at matched B vertex {b}")]
    MissingRightWing { b: usize },
    #[error("augmenting paths overlap at ({a}, {b})")]
    OverlappingPaths { a: usize, b: usize },
}

/// Rewires `m0` along one 3-augmenting path per left wing.
///
/// Right wings are edges `(a, b)` with `a` free and `b` matched in `m0`;
/// each free A vertex may carry at most one. Left wings form a matching of
/// edges `(a, d)` with `a` matched and `d` free in `m0`. For every left wing
/// the path `d - a - b - c` is closed by `b = m0`'s mate of `a` and the
/// lowest-indexed right wing `(c, b)`; the matched edge `(a, b)` is replaced
/// by `(a, d)` and `(c, b)`.
///
/// Per-B wing choice is lowest-index for determinism; any choice works since
/// each free A vertex carries at most one right wing, which keeps chosen
/// wings vertex-disjoint. The result always has exactly
/// `m0.len() + left_wings.len()` edges.
pub fn augment_with_wings(
    m0: &Matching,
    right_wings: &[(usize, usize)],
    left_wings: &Matching,
) -> Result<Matching, WingError> {
    let mut wing_at_b: Vec<Option<usize>> = vec![None; m0.n_b()];
    let mut wing_used_a = vec![false; m0.n_a()];
    for &(a, b) in right_wings {
        if m0.covers_a(a) {
            return Err(WingError::RightWingAnchorMatched { a, b });
        }
        if !m0.covers_b(b) {
            return Err(WingError::RightWingOffMatchedB { a, b });
        }
        if wing_used_a[a] {
            return Err(WingError::DuplicateRightWing { a });
        }
        wing_used_a[a] = true;
        match wing_at_b[b] {
            Some(existing) if existing < a => {}
            _ => wing_at_b[b] = Some(a),
        }
    }

    let mut out = m0.clone();
    for (a, d) in left_wings.edges() {
        let Some(b) = m0.mate_of_a(a) else {
            return Err(WingError::LeftWingAnchorUnmatched { a, b: d });
        };
        if m0.covers_b(d) {
            return Err(WingError::LeftWingOnMatchedB { a, b: d });
        }
        let c = wing_at_b[b].ok_or(WingError::MissingRightWing { b })?;
        out.remove(a, b);
        if !out.try_insert(a, d) {
            return Err(WingError::OverlappingPaths { a, b: d });
        }
        if !out.try_insert(c, b) {
            return Err(WingError::OverlappingPaths { a: c, b });
        }
    }
    debug_assert_eq!(out.len(), m0.len() + left_wings.len());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matching_of(n_a: usize, n_b: usize, edges: &[(usize, usize)]) -> Matching {
        let mut m = Matching::new(n_a, n_b);
        for &(a, b) in edges {
            assert!(m.try_insert(a, b));
        }
        m
    }

    #[test]
    fn no_left_wings_leaves_m0_unchanged() {
        let m0 = matching_of(4, 4, &[(0, 2), (1, 3)]);
        let out = augment_with_wings(&m0, &[(2, 2), (3, 3)], &Matching::new(4, 4)).unwrap();
        assert_eq!(out, m0);
    }

    #[test]
    fn two_paths_on_half_trap_core() {
        let m0 = matching_of(4, 4, &[(0, 2), (1, 3)]);
        let right = [(2, 2), (3, 3)];
        let left = matching_of(4, 4, &[(0, 0), (1, 1)]);
        let out = augment_with_wings(&m0, &right, &left).unwrap();
        assert_eq!(out.to_edge_vec(), vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(out.len(), m0.len() + left.len());
    }

    #[test]
    fn lowest_index_wing_is_chosen() {
        // Both free A vertices 1 and 2 offer wings at b=0; vertex 1 must win.
        let m0 = matching_of(3, 2, &[(0, 0)]);
        let right = [(2, 0), (1, 0)];
        let left = matching_of(3, 2, &[(0, 1)]);
        let out = augment_with_wings(&m0, &right, &left).unwrap();
        assert_eq!(out.to_edge_vec(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn missing_wing_is_an_error() {
        let m0 = matching_of(2, 2, &[(0, 0)]);
        let left = matching_of(2, 2, &[(0, 1)]);
        assert_eq!(
            augment_with_wings(&m0, &[], &left).unwrap_err(),
            WingError::MissingRightWing { b: 0 }
        );
    }

    #[test]
    fn duplicate_right_wing_is_an_error() {
        let m0 = matching_of(3, 3, &[(0, 0), (1, 1)]);
        let right = [(2, 0), (2, 1)];
        assert_eq!(
            augment_with_wings(&m0, &right, &Matching::new(3, 3)).unwrap_err(),
            WingError::DuplicateRightWing { a: 2 }
        );
    }

    #[test]
    fn matched_right_wing_anchor_is_an_error() {
        let m0 = matching_of(2, 2, &[(0, 0), (1, 1)]);
        assert_eq!(
            augment_with_wings(&m0, &[(0, 1)], &Matching::new(2, 2)).unwrap_err(),
            WingError::RightWingAnchorMatched { a: 0, b: 1 }
        );
    }

    #[test]
    fn left_wing_on_matched_b_is_an_error() {
        let m0 = matching_of(2, 2, &[(0, 0), (1, 1)]);
        let left = matching_of(2, 2, &[(0, 1)]);
        assert_eq!(
            augment_with_wings(&m0, &[], &left).unwrap_err(),
            WingError::LeftWingOnMatchedB { a: 0, b: 1 }
        );
    }
}
