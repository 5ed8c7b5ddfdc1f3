//! Data-parallel helpers. With the `parallel` feature the maps run on the
//! rayon pool; without it they are plain sequential iterators. Results are
//! always returned in input order, and reductions go through fixed-size
//! chunks summed left to right, so output does not depend on thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk length used by [`chunked_sum`].
pub(crate) const CHUNK: usize = 4096;

#[cfg(feature = "parallel")]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..n).map(f).collect()
}

/// Sum of `f` over `values` with a reproducible reduction order. `f` returns
/// a fixed-size array so several moments can be accumulated in one pass.
pub(crate) fn chunked_sum<const K: usize, F>(values: &[f64], f: F) -> [f64; K]
where
    F: Fn(f64) -> [f64; K] + Sync + Send,
{
    let chunks: Vec<&[f64]> = values.chunks(CHUNK).collect();
    let partial = map(&chunks, |chunk| {
        let mut acc = [0.0; K];
        for &v in chunk.iter() {
            let t = f(v);
            for k in 0..K {
                acc[k] += t[k];
            }
        }
        acc
    });
    let mut total = [0.0; K];
    for p in partial {
        for k in 0..K {
            total[k] += p[k];
        }
    }
    total
}
