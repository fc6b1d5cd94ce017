//! Data-parallel helpers. With the `parallel` feature the degree sweeps
//! fan out over a rayon pool; without it the same entry points run
//! sequentially. Results come back in input order either way, so output
//! is identical across thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over items, in parallel when the feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    items.par_iter().map(f).collect()
}

/// Sequential fallback used when the `parallel` feature is off.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Always-sequential map, kept callable for benchmarks comparing the two.
pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Run `f` on a pool with the given number of threads. `jobs = 0` means
/// the default pool size. Without the `parallel` feature, `f` just runs.
#[cfg(feature = "parallel")]
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("building thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_jobs<T>(jobs: usize, f: impl FnOnce() -> T) -> T {
    let _ = jobs;
    f()
}
