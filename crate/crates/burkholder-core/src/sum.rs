//! Deterministic pairwise-tree summation.

/// Sums a slice by recursive halving. Error grows like O(log n) in the
/// rounding unit and the result depends only on the slice contents (not on
/// accumulation order effects), so repeated runs are bit-identical.
#[must_use]
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BASE: usize = 32;
    if xs.len() <= BASE {
        let mut acc = 0.0;
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}
