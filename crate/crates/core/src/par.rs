//! Order-preserving parallel map over a shared rayon pool.
//!
//! The worker count comes from [`set_jobs`] or, failing that, the
//! `REE_SYL_JOBS` environment variable. Results never depend on it.

use std::sync::OnceLock;

use rayon::prelude::*;

static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();

fn build(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

fn env_jobs() -> usize {
    std::env::var("REE_SYL_JOBS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or(0)
}

/// Fixes the worker count. Only the first call (or first use) counts;
/// returns `false` if the pool already existed.
pub fn set_jobs(jobs: usize) -> bool {
    let mut fresh = false;
    POOL.get_or_init(|| {
        fresh = true;
        build(jobs)
    });
    fresh
}

fn pool() -> &'static rayon::ThreadPool {
    POOL.get_or_init(|| build(env_jobs()))
}

/// `items.iter().map(f).collect()`, evaluated in parallel.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    pool().install(|| items.par_iter().map(f).collect())
}

#[cfg(test)]
mod tests {
    #[test]
    fn map_preserves_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let ys = super::map(&xs, |x| x * 2);
        assert_eq!(ys, xs.iter().map(|x| x * 2).collect::<Vec<_>>());
    }
}
