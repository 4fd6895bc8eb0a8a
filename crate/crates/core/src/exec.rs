//! Execution strategy for the data-parallel loops.
//!
//! Every heavy loop in the crate is an indexed map (coefficients per mode,
//! densities per grid point, reports per sweep point). With the `parallel`
//! feature those run on the rayon pool; without it, or when
//! [`Exec::Sequential`] is requested, they run on the calling thread. Output
//! order is always the index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// `true` when this strategy actually fans out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `0..len`, preserving index order.
    pub fn map_indexed<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Send + Sync,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Maps `f` over a slice, preserving order.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Send + Sync,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Sums `f` over a slice. Terms are evaluated under the chosen strategy
    /// but always accumulated left to right, so the result is bit-identical
    /// across strategies and thread counts.
    pub fn sum_slice<S, F>(self, items: &[S], f: F) -> f64
    where
        S: Sync,
        F: Fn(&S) -> f64 + Send + Sync,
    {
        self.map_slice(items, f).into_iter().sum()
    }
}
