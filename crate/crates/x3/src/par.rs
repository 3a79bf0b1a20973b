//! Batch mapping over independent work items.
//!
//! With the default `parallel` feature the batch helpers fan out over a
//! rayon pool; without it they run sequentially. Results always come back
//! in input order, so callers are deterministic either way. The `_seq`
//! variant is available unconditionally for benchmarking the two paths
//! against each other.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over the items, in parallel when the `parallel` feature is on.
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.as_slice().par_iter().map(&f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(|t| f(t)).collect()
    }
}

/// Sequential reference path, independent of feature flags.
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(|t| f(t)).collect()
}
