//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) these dispatch to rayon; without it,
//! [`Execution::Parallel`] silently runs sequentially. Every helper returns
//! results in index order, so output never depends on scheduling.

use std::ops::Range;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether parallel execution is compiled in and requested.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `range.filter_map(f)` collected in index order.
pub fn filter_map_range<T, F>(range: Range<u64>, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().filter_map(f).collect();
    }
    let _ = exec;
    range.filter_map(f).collect()
}

/// Concatenation of `f(i)` for `i` in `range`, in index order.
pub fn flat_map_range<T, F>(range: Range<usize>, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().flat_map_iter(f).collect();
    }
    let _ = exec;
    range.flat_map(f).collect()
}

/// Smallest index in `range` for which `f` returns `Some`, with its value.
pub fn find_first<T, F>(range: Range<usize>, exec: Execution, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().find_map_first(|i| f(i).map(|v| (i, v)));
    }
    let _ = exec;
    range.into_iter().find_map(|i| f(i).map(|v| (i, v)))
}

/// Runs `op` with parallelism capped at `threads` worker threads.
pub fn with_thread_cap<R: Send>(threads: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads.filter(|&n| n > 0) {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            return pool.install(op);
        }
    }
    let _ = threads;
    op()
}
