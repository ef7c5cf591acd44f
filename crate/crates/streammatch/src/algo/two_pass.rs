//! Two-pass matching for arbitrary arrival order, randomized and
//! deterministic variants.

use fixedbitset::FixedBitSet;

use crate::algo::{
    augment_with_wings, left_wing_filter, AlgoError, ParamError, SubsetSample,
};
use crate::matching::Matching;
use crate::stream::{StreamError, StreamSource};

/// First pass: a plain greedy `m0` and, in parallel, a greedy `m_prime`
/// restricted to A vertices in `sample`. The `m_prime` edges joining a free
/// A vertex to a matched B vertex of `m0` become right wings. Second pass:
/// a greedy `m2` over edges from the anchors of those wings to free B
/// vertices, each completing one 3-augmenting path.
pub fn two_pass_randomized(
    src: &mut StreamSource<'_>,
    sample: &SubsetSample,
) -> Result<Matching, StreamError> {
    assert_eq!(sample.n_a(), src.n_a(), "sample drawn for a different A side");
    let (n_a, n_b) = (src.n_a(), src.n_b());

    let mut m0 = Matching::new(n_a, n_b);
    let mut m_prime = Matching::new(n_a, n_b);
    let pass = src.open_pass()?;
    for (a, b) in pass {
        src.note_work(2);
        if m0.try_insert(a, b) {
            src.note_stored(1);
        }
        if sample.contains(a) && m_prime.try_insert(a, b) {
            src.note_stored(1);
        }
    }

    let right_wings = wings_between(&m0, m_prime.edges());
    src.note_stored(right_wings.len());
    finish_with_second_pass(src, &m0, right_wings)
}

/// Deterministic variant: the sampled matching is replaced by an incomplete
/// semi-matching with B-side degree cap `lambda`, which needs no random
/// coins to cover many A vertices. Requires `lambda >= 2`.
pub fn two_pass_deterministic(
    src: &mut StreamSource<'_>,
    lambda: usize,
) -> Result<Matching, AlgoError> {
    if lambda < 2 {
        return Err(ParamError::LambdaTooSmall {
            min: 2,
            got: lambda,
        }
        .into());
    }
    let (n_a, n_b) = (src.n_a(), src.n_b());

    let mut m0 = Matching::new(n_a, n_b);
    let mut s = crate::matching::SemiMatching::new(n_a, n_b, lambda);
    let pass = src.open_pass()?;
    for (a, b) in pass {
        src.note_work(2);
        if m0.try_insert(a, b) {
            src.note_stored(1);
        }
        if s.try_insert(a, b) {
            src.note_stored(1);
        }
    }

    let right_wings = wings_between(&m0, s.edges());
    src.note_stored(right_wings.len());
    Ok(finish_with_second_pass(src, &m0, right_wings)?)
}

/// Edges of `candidates` joining a free A vertex to a matched B vertex of
/// `m0`: the usable right wings.
fn wings_between(
    m0: &Matching,
    candidates: impl Iterator<Item = (usize, usize)>,
) -> Vec<(usize, usize)> {
    candidates
        .filter(|&(a, b)| !m0.covers_a(a) && m0.covers_b(b))
        .collect()
}

fn finish_with_second_pass(
    src: &mut StreamSource<'_>,
    m0: &Matching,
    right_wings: Vec<(usize, usize)>,
) -> Result<Matching, StreamError> {
    let mut anchors = FixedBitSet::with_capacity(m0.n_a());
    for &(_, b) in &right_wings {
        let a = m0
            .mate_of_b(b)
            .expect("right wings end on matched B vertices");
        anchors.insert(a);
    }
    let filter = left_wing_filter(m0, anchors);

    let mut m2 = Matching::new(m0.n_a(), m0.n_b());
    let pass = src.open_pass()?;
    for (a, b) in pass {
        src.note_work(1);
        if filter.allows(a, b) && m2.try_insert(a, b) {
            src.note_stored(1);
        }
    }

    let out = augment_with_wings(m0, &right_wings, &m2)
        .expect("wing selection establishes the augment preconditions");
    src.note_stored(out.len());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algo::sample_vertex_subset;
    use crate::generators;
    use crate::matching::is_valid_matching;
    use crate::oracle::max_matching;

    #[test]
    fn empty_sample_returns_the_greedy_matching() {
        let (g, adv) = generators::half_trap(3);
        let none = sample_vertex_subset(g.n_a(), 0.0, 0).unwrap();
        let mut src = StreamSource::new(&g, &adv).unwrap();
        let m = two_pass_randomized(&mut src, &none).unwrap();
        assert_eq!(m.to_edge_vec(), vec![(0, 3), (1, 4), (2, 5)]);
        assert_eq!(src.passes_opened(), 2);
    }

    #[test]
    fn forced_sample_recovers_the_half_trap_optimum() {
        let (g, adv) = generators::half_trap(2);
        let mut members = fixedbitset::FixedBitSet::with_capacity(4);
        members.insert(2);
        members.insert(3);
        let sample = SubsetSample::from_members(0.5, members);
        let mut src = StreamSource::new(&g, &adv).unwrap();
        let m = two_pass_randomized(&mut src, &sample).unwrap();
        assert_eq!(m.len(), 4);
        assert!(is_valid_matching(&g, &m));
    }

    #[test]
    fn randomized_result_is_at_least_the_greedy_size() {
        let g = generators::random_bipartite(25, 25, 160, 3).unwrap();
        let order = generators::uniform_order(g.m(), 5);
        for seed in 0..10 {
            let sample = sample_vertex_subset(g.n_a(), crate::algo::DEFAULT_SUBSET_P, seed).unwrap();
            let mut src = StreamSource::new(&g, &order).unwrap();
            let m = two_pass_randomized(&mut src, &sample).unwrap();
            let mut src2 = StreamSource::new(&g, &order).unwrap();
            let m0 = crate::algo::greedy(src2.open_pass().unwrap(), None);
            assert!(m.len() >= m0.len());
            assert!(is_valid_matching(&g, &m));
        }
    }

    #[test]
    fn deterministic_rejects_lambda_below_two() {
        let (g, adv) = generators::half_trap(1);
        let mut src = StreamSource::new(&g, &adv).unwrap();
        assert!(matches!(
            two_pass_deterministic(&mut src, 1),
            Err(AlgoError::Param(ParamError::LambdaTooSmall { min: 2, got: 1 }))
        ));
    }

    #[test]
    fn deterministic_on_single_edge_graph() {
        let g = crate::graph::BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        let o = crate::graph::ArrivalOrder::identity(1);
        let mut src = StreamSource::new(&g, &o).unwrap();
        let m = two_pass_deterministic(&mut src, 3).unwrap();
        assert_eq!(m.to_edge_vec(), vec![(0, 0)]);
        assert_eq!(src.passes_opened(), 2);
    }

    #[test]
    fn deterministic_escapes_the_half_trap() {
        let (g, adv) = generators::half_trap(2);
        let mut src = StreamSource::new(&g, &adv).unwrap();
        let m = two_pass_deterministic(&mut src, 3).unwrap();
        assert_eq!(m.len(), 4);
        assert!(is_valid_matching(&g, &m));
        assert_eq!(src.passes_opened(), 2);
    }

    #[test]
    fn deterministic_meets_its_floor_on_random_instances() {
        for seed in 0..15 {
            let g = generators::random_bipartite(30, 30, 140, seed).unwrap();
            let opt = max_matching(&g).len();
            let order = generators::uniform_order(g.m(), seed ^ 0xABCD);
            let mut src = StreamSource::new(&g, &order).unwrap();
            let m = two_pass_deterministic(&mut src, 3).unwrap();
            // ratio >= 1/2 + 1/52, checked in integers: 104*|M| >= 54*opt.
            assert!(104 * m.len() >= 54 * opt, "{} vs opt {opt}", m.len());
        }
    }
}
