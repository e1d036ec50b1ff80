//! Execution helpers for the exhaustive searches.
//!
//! Every checker in the crate quantifies over finite index ranges. The hot
//! loops go through these helpers so that the `parallel` feature can swap a
//! rayon-backed scan in for the sequential one without touching checker code.
//! Both paths report the *first* counterexample in index order, so reports
//! are deterministic regardless of the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest `i` in `0..n` failing `ok`, scanning sequentially.
pub fn first_failure_seq<F>(n: u64, ok: F) -> Option<u64>
where
    F: Fn(u64) -> bool,
{
    (0..n).find(|&i| !ok(i))
}

/// Smallest `i` in `0..n` failing `ok`.
#[cfg(feature = "parallel")]
pub fn first_failure<F>(n: u64, ok: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    // Splitting into contiguous chunks keeps the per-item closure call
    // overhead out of the inner loop; find_first keeps determinism.
    const CHUNK: u64 = 1 << 16;
    if n <= CHUNK {
        return first_failure_seq(n, ok);
    }
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .find_map_first(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            (lo..hi).find(|&i| !ok(i))
        })
}

/// Smallest `i` in `0..n` failing `ok`.
#[cfg(not(feature = "parallel"))]
pub fn first_failure<F>(n: u64, ok: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    first_failure_seq(n, ok)
}

/// First `Some` produced by `f` over `0..n`, in index order.
#[cfg(feature = "parallel")]
pub fn first_hit<T, F>(n: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(|i| f(i))
}

/// First `Some` produced by `f` over `0..n`, in index order.
#[cfg(not(feature = "parallel"))]
pub fn first_hit<T, F>(n: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    (0..n).find_map(|i| f(i))
}

/// Maps `f` over `0..n` preserving index order in the output.
#[cfg(feature = "parallel")]
pub fn ordered_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Maps `f` over `0..n` preserving index order in the output.
#[cfg(not(feature = "parallel"))]
pub fn ordered_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Name of the active execution mode, recorded in reports and benches.
pub fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_smallest() {
        assert_eq!(first_failure(1 << 20, |i| i != 777_777), Some(777_777));
        assert_eq!(first_failure(100, |_| true), None);
        assert_eq!(
            first_failure(1 << 20, |i| i % 2 == 0),
            first_failure_seq(1 << 20, |i| i % 2 == 0)
        );
    }

    #[test]
    fn first_hit_is_smallest() {
        let hit = first_hit(1 << 18, |i| if i >= 1234 { Some(i) } else { None });
        assert_eq!(hit, Some(1234));
    }
}
