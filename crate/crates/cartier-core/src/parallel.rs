//! Data-parallel helpers. With the `parallel` feature (the default) these
//! fan out over rayon; without it they run sequentially with identical
//! results, since every reduction below is order-insensitive or collected
//! back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over the items, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn map_ordered<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(I) -> T,
{
    items.into_iter().map(f).collect()
}

/// Runs `f` on a dedicated thread pool with `jobs` threads when the
/// `parallel` feature is enabled; `None` uses the global default. The
/// sequential build accepts and ignores the knob, so outputs never depend
/// on it.
#[cfg(feature = "parallel")]
pub fn run_with_jobs<T, F>(jobs: Option<usize>, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    match jobs {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_with_jobs<T, F>(jobs: Option<usize>, f: F) -> T
where
    F: FnOnce() -> T,
{
    let _ = jobs;
    f()
}
