//! Order-fixed reductions.
//!
//! Sums over grids and sample batches are computed with a fixed binary
//! splitting so the result does not depend on how many workers produced the
//! summands.

const LEAF: usize = 64;

pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn pairwise_sum_by<F: Fn(usize) -> f64 + Sync>(len: usize, f: F) -> f64 {
    fn go<F: Fn(usize) -> f64 + Sync>(lo: usize, hi: usize, f: &F) -> f64 {
        if hi - lo <= LEAF {
            return (lo..hi).map(f).sum();
        }
        let mid = lo + (hi - lo) / 2;
        let (a, b) = rayon::join(|| go(lo, mid, f), || go(mid, hi, f));
        a + b
    }
    if len == 0 {
        0.0
    } else {
        go(0, len, &f)
    }
}
