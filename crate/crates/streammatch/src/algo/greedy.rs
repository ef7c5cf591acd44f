//! Single-pass greedy consumers: matchings, semi-matchings, and the
//! restricted-subset variant.

use crate::algo::{EdgeFilter, ParamError, SubsetSample};
use crate::matching::{Matching, SemiMatching};
use crate::stream::{Pass, StreamError, StreamSource};

/// Greedy matching over one pass: an edge is taken iff the filter accepts it
/// and both endpoints are currently free. O(1) work per edge; the result is
/// maximal with respect to the accepted subsequence.
pub fn greedy(pass: Pass<'_>, filter: Option<&EdgeFilter>) -> Matching {
    let mut m = Matching::new(pass.n_a(), pass.n_b());
    for (a, b) in pass {
        if filter.is_none_or(|f| f.allows(a, b)) {
            m.try_insert(a, b);
        }
    }
    m
}

/// Greedy incomplete semi-matching over one pass: `(a, b)` is taken iff `a`
/// is uncovered and `b` still has capacity under the `lambda` cap.
pub fn semi(pass: Pass<'_>, lambda: usize) -> Result<SemiMatching, ParamError> {
    if lambda < 1 {
        return Err(ParamError::LambdaTooSmall {
            min: 1,
            got: lambda,
        });
    }
    let mut s = SemiMatching::new(pass.n_a(), pass.n_b(), lambda);
    for (a, b) in pass {
        s.try_insert(a, b);
    }
    Ok(s)
}

/// Greedy matching restricted to edges whose A endpoint lies in `sample`.
/// Consumes one pass and reports its storage and work to the source's audit.
pub fn random_subset_greedy(
    src: &mut StreamSource<'_>,
    sample: &SubsetSample,
) -> Result<Matching, StreamError> {
    assert_eq!(sample.n_a(), src.n_a(), "sample drawn for a different A side");
    let mut m = Matching::new(src.n_a(), src.n_b());
    let pass = src.open_pass()?;
    for (a, b) in pass {
        src.note_work(1);
        if sample.contains(a) && m.try_insert(a, b) {
            src.note_stored(1);
        }
    }
    Ok(m)
}
