//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) work items are spread over the
//! rayon pool; without it, or under [`Execution::Sequential`], they run in
//! order on the calling thread. Outputs are always assembled in input order,
//! so results never depend on the execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
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

impl Execution {
    /// Applies `f` to every item, keeping input order in the output.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps every index in `0..n` and folds the results with an associative
    /// `combine`. `combine` must be associative for the result to be
    /// independent of how the range is split.
    pub fn map_reduce<R, F, C>(self, n: u64, identity: R, f: F, combine: C) -> R
    where
        R: Send + Clone + Sync,
        F: Fn(u64) -> R + Sync + Send,
        C: Fn(R, R) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n)
                .into_par_iter()
                .map(f)
                .reduce(|| identity.clone(), &combine),
            _ => (0..n).map(f).fold(identity, combine),
        }
    }
}
