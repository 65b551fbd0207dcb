//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper here hands each output element to exactly one closure call,
//! so results never depend on the number of worker threads.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether a call may fan work out over the rayon pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Calls `f(chunk_index, chunk)` for each `size`-long chunk of `data`.
pub(crate) fn for_each_chunk<F>(data: &mut [f64], size: usize, exec: Execution, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => data
            .par_chunks_mut(size)
            .with_min_len(min_len(size))
            .enumerate()
            .for_each(|(i, c)| f(i, c)),
        _ => data
            .chunks_mut(size)
            .enumerate()
            .for_each(|(i, c)| f(i, c)),
    }
}

/// `(0..n).map(f).collect()`, possibly in parallel, order preserved.
pub(crate) fn map_range<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

// Keep rayon tasks at a few thousand samples at least.
#[cfg(feature = "parallel")]
fn min_len(chunk: usize) -> usize {
    (4096 / chunk.max(1)).max(1)
}
