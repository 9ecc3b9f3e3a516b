//! Sequential/parallel execution switch.
//!
//! With the `parallel` feature (on by default) data-parallel loops go through
//! rayon; without it every loop runs on the calling thread. [`Exec`] lets
//! callers (and the benchmarks) pick a strategy explicitly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Below this many scalar operations a parallel split costs more than it saves.
pub const PAR_THRESHOLD: usize = 1 << 14;

impl Exec {
    /// Falls back to sequential execution for small workloads.
    pub fn for_work(self, work: usize) -> Exec {
        if work < PAR_THRESHOLD {
            Exec::Sequential
        } else {
            self
        }
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }

    pub fn map_range<R, F>(self, range: std::ops::Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => range.map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => range.into_par_iter().map(f).collect(),
        }
    }

    /// Applies `f` to each chunk of `rows` (a row-major buffer with rows of
    /// length `width`), passing the index of the chunk's first row.
    pub fn for_each_row<T, F>(self, data: &mut [T], width: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        if width == 0 {
            return;
        }
        match self {
            Exec::Sequential => data.chunks_mut(width).enumerate().for_each(|(i, row)| f(i, row)),
            #[cfg(feature = "parallel")]
            Exec::Parallel => data.par_chunks_mut(width).enumerate().for_each(|(i, row)| f(i, row)),
        }
    }
}
