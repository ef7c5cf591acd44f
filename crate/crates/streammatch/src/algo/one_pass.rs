//! One-pass matching for random arrival order.

use fixedbitset::FixedBitSet;

use crate::algo::{augment_with_wings, left_wing_filter, right_wing_filter, EdgeFilter, PhaseSplit};
use crate::matching::Matching;
use crate::stream::{StreamError, StreamSource};

/// Runs four greedy consumers over a single pass, split into three phases at
/// `floor(alpha * m)` and `floor(beta * m)`:
///
/// * `m_g` sees every edge (the plain greedy baseline);
/// * `m0` sees phase one;
/// * `m1` sees phase-two edges from a free A vertex to a matched B vertex
///   of `m0` (right wings);
/// * `m2` sees phase-three edges from `a_prime` to a free B vertex, where
///   `a_prime` holds the A vertices whose `m0` mate was reached by `m1`
///   (left wings).
///
/// Returns the larger of `m_g` and `m0` augmented along the collected wings;
/// ties go to the augmented matching so the output is deterministic.
pub fn one_pass_random_order(
    src: &mut StreamSource<'_>,
    split: PhaseSplit,
) -> Result<Matching, StreamError> {
    let (n_a, n_b, m) = (src.n_a(), src.n_b(), src.m());
    let (cut1, cut2) = split.cuts(m);

    let mut m_g = Matching::new(n_a, n_b);
    let mut m0 = Matching::new(n_a, n_b);
    let mut m1 = Matching::new(n_a, n_b);
    let mut m2 = Matching::new(n_a, n_b);
    let mut right_filter: Option<EdgeFilter> = None;
    let mut left_filter: Option<EdgeFilter> = None;

    let pass = src.open_pass()?;
    for (pos, (a, b)) in pass.enumerate() {
        src.note_work(4);
        if pos == cut1 {
            right_filter = Some(right_wing_filter(&m0));
        }
        if pos == cut2 {
            left_filter = Some(left_wing_filter(&m0, mates_reached_by(&m0, &m1)));
        }
        if m_g.try_insert(a, b) {
            src.note_stored(1);
        }
        if pos < cut1 {
            if m0.try_insert(a, b) {
                src.note_stored(1);
            }
        } else if pos < cut2 {
            let f = right_filter.as_ref().expect("built at the cut1 boundary");
            if f.allows(a, b) && m1.try_insert(a, b) {
                src.note_stored(1);
            }
        } else {
            let f = left_filter.as_ref().expect("built at the cut2 boundary");
            if f.allows(a, b) && m2.try_insert(a, b) {
                src.note_stored(1);
            }
        }
    }

    let augmented = augment_with_wings(&m0, &m1.to_edge_vec(), &m2)
        .expect("phase filters establish the wing preconditions");
    src.note_stored(augmented.len());
    Ok(if augmented.len() >= m_g.len() {
        augmented
    } else {
        m_g
    })
}

/// A vertices whose `m0` mate is covered by `m1`.
fn mates_reached_by(m0: &Matching, m1: &Matching) -> FixedBitSet {
    let mut allow_a = FixedBitSet::with_capacity(m0.n_a());
    for (_, b) in m1.edges() {
        let a = m0
            .mate_of_b(b)
            .expect("m1 is filtered to matched B vertices of m0");
        allow_a.insert(a);
    }
    allow_a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::{ArrivalOrder, BipartiteGraph};
    use crate::matching::is_valid_matching;

    #[test]
    fn single_edge_stream_returns_that_edge() {
        let g = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        let o = ArrivalOrder::identity(1);
        let mut src = StreamSource::new(&g, &o).unwrap();
        let m = one_pass_random_order(&mut src, PhaseSplit::default()).unwrap();
        assert_eq!(m.to_edge_vec(), vec![(0, 0)]);
        assert_eq!(src.passes_opened(), 1);
    }

    #[test]
    fn recovers_the_optimum_on_a_favourable_half_trap_order() {
        // Traps, then the upper diagonals, then the lower diagonals: the
        // phases line up so the wings rebuild the perfect matching.
        let (g, _) = generators::half_trap(2);
        let order = ArrivalOrder::new(vec![4, 5, 2, 3, 0, 1]).unwrap();
        let seq: Vec<_> = order.perm().iter().map(|&i| g.edge(i)).collect();
        assert_eq!(seq, vec![(0, 2), (1, 3), (2, 2), (3, 3), (0, 0), (1, 1)]);

        let mut src = StreamSource::new(&g, &order).unwrap();
        let m = one_pass_random_order(&mut src, PhaseSplit::default()).unwrap();
        assert_eq!(m.to_edge_vec(), vec![(0, 0), (1, 1), (2, 2), (3, 3)]);

        let mut src2 = StreamSource::new(&g, &order).unwrap();
        let plain = crate::algo::greedy(src2.open_pass().unwrap(), None);
        assert_eq!(plain.len(), 2);
    }

    #[test]
    fn ties_return_the_augmented_matching() {
        // Phase 1 takes (1,0). The wings rebuild {(0,0),(1,1)} while the
        // full-stream greedy ends at {(1,0),(0,1)}: equal sizes, different
        // edges. The augmented matching must win the tie.
        let g = BipartiteGraph::new(2, 2, vec![(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let order = ArrivalOrder::new(vec![1, 0, 3, 2]).unwrap();
        let mut src = StreamSource::new(&g, &order).unwrap();
        let m = one_pass_random_order(&mut src, PhaseSplit::default()).unwrap();
        assert_eq!(m.to_edge_vec(), vec![(0, 0), (1, 1)]);

        let mut src2 = StreamSource::new(&g, &order).unwrap();
        let plain = crate::algo::greedy(src2.open_pass().unwrap(), None);
        assert_eq!(plain.to_edge_vec(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn output_is_never_smaller_than_plain_greedy() {
        let g = generators::random_bipartite(30, 30, 200, 11).unwrap();
        for seed in 0..20 {
            let order = generators::uniform_order(g.m(), seed);
            let mut src = StreamSource::new(&g, &order).unwrap();
            let m = one_pass_random_order(&mut src, PhaseSplit::default()).unwrap();
            let mut src2 = StreamSource::new(&g, &order).unwrap();
            let plain = crate::algo::greedy(src2.open_pass().unwrap(), None);
            assert!(m.len() >= plain.len());
            assert!(is_valid_matching(&g, &m));
            assert_eq!(src.passes_opened(), 1);
        }
    }

    #[test]
    fn empty_stream_yields_empty_matching() {
        let g = BipartiteGraph::new(2, 2, vec![]).unwrap();
        let o = ArrivalOrder::identity(0);
        let mut src = StreamSource::new(&g, &o).unwrap();
        let m = one_pass_random_order(&mut src, PhaseSplit::default()).unwrap();
        assert!(m.is_empty());
    }
}
