//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the helpers dispatch to rayon when
//! asked for [`Execution::Parallel`]. Results never depend on the execution
//! mode: every helper preserves index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Execution::Parallel;
        #[cfg(not(feature = "parallel"))]
        return Execution::Sequential;
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        self != Execution::Sequential
    }
}

/// `(0..n).map(f).collect()`, in index order.
pub fn map_indices<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
    }
}

/// Smallest `i < n` with `pred(i)`.
pub fn find_first<F>(exec: Execution, n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).find(|&i| pred(i)),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().find_first(|&i| pred(i)),
    }
}

/// `out[i] = f(i)` for every slot.
pub fn fill<T, F>(exec: Execution, out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => out.iter_mut().enumerate().for_each(|(i, o)| *o = f(i)),
        #[cfg(feature = "parallel")]
        Execution::Parallel => out
            .par_iter_mut()
            .with_min_len(256)
            .enumerate()
            .for_each(|(i, o)| *o = f(i)),
    }
}

/// Runs `f` inside a pool of `jobs` threads (all cores when `None`).
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            return pool.install(f);
        }
    }
    let _ = jobs;
    f()
}
