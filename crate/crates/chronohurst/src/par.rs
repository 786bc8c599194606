//! Data-parallel execution helpers.
//!
//! Heavy loops (expanding-window Hurst paths, the segmentation knot grid,
//! wavelet scale rows, Monte Carlo sweeps) are expressed as index maps and
//! dispatched either to rayon or to a plain sequential loop. The `parallel`
//! feature (on by default) enables the rayon path; without it only
//! [`Parallelism::Sequential`] exists.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode for the data-parallel kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    /// Plain sequential loop.
    Sequential,
    /// rayon work-stealing pool.
    #[cfg(feature = "parallel")]
    Rayon,
}

impl Default for Parallelism {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        Parallelism::Rayon
    }
    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        Parallelism::Sequential
    }
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_indices<T, F>(n: usize, mode: Parallelism, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        Parallelism::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => (0..n).into_par_iter().map(f).collect(),
    }
}

/// Maps `f` over `0..n` and reduces with `min_by` on the returned key.
/// Ties resolve to the smallest index so both modes agree exactly.
pub fn min_by_key<T, F>(n: usize, mode: Parallelism, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<(f64, T)> + Sync + Send,
{
    let pick = |acc: Option<(f64, usize, T)>, item: Option<(f64, usize, T)>| match (acc, item) {
        (None, b) => b,
        (a, None) => a,
        (Some(a), Some(b)) => {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                Some(b)
            } else {
                Some(a)
            }
        }
    };
    let best = match mode {
        Parallelism::Sequential => (0..n)
            .map(|i| f(i).map(|(k, v)| (k, i, v)))
            .fold(None, pick),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => (0..n)
            .into_par_iter()
            .map(|i| f(i).map(|(k, v)| (k, i, v)))
            .reduce(|| None, pick),
    };
    best.map(|(_, i, v)| (i, v))
}
