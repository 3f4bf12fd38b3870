//! Execution layer for embarrassingly parallel sweeps.
//!
//! With the default `parallel` feature these helpers fan work out over a
//! rayon pool; without it they run plain sequential loops. Results are
//! deterministic either way: searches return the match with the smallest
//! index and reductions combine associatively, so callers observe identical
//! values for any worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Apply `f` to every index in `0..n` and return the `Some` result with the
/// smallest index, stopping early once it is known.
pub fn find_map_first<T, F>(n: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().find_map_first(|i| f(i))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(f)
    }
}

/// Fold `f` over `0..n` with an associative combiner.
pub fn map_reduce<T, F, I, C>(n: u64, f: F, identity: I, combine: C) -> T
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
    I: Fn() -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).reduce(&identity, combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).fold(identity(), combine)
    }
}

/// True when `pred` holds on all of `0..n`, with early exit on a violation.
pub fn all(n: u64, pred: impl Fn(u64) -> bool + Sync) -> bool {
    find_map_first(n, |i| if pred(i) { None } else { Some(()) }).is_none()
}

/// Run `f` under a pool of `workers` threads (`0` keeps the ambient pool).
/// Sequential builds run `f` directly, whatever the count.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if workers == 0 {
            f()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .expect("worker pool")
                .install(f)
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_positional() {
        // Many matches: the answer must be the smallest index, not a racing
        // thread's.
        for workers in [1, 2, 8] {
            let hit = with_workers(workers, || {
                find_map_first(10_000, |i| if i % 7 == 3 { Some(i) } else { None })
            });
            assert_eq!(hit, Some(3));
        }
    }

    #[test]
    fn reduce_matches_sequential_sum() {
        let total = map_reduce(1000, |i| i as u128, || 0u128, |a, b| a + b);
        assert_eq!(total, 999 * 1000 / 2);
    }

    #[test]
    fn all_detects_violations() {
        assert!(all(100, |i| i < 100));
        assert!(!all(100, |i| i != 57));
    }
}
