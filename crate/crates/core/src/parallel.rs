//! Order-preserving data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature the work runs on rayon, either on the global
//! pool or on a dedicated pool of a fixed size. Without it every call is a
//! plain iterator map. Results always come back in input order, so callers
//! that fold them sequentially get bit-identical output at any thread count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    /// Single-threaded, no rayon involvement.
    Sequential,
    /// A dedicated pool with this many worker threads.
    Threads(usize),
    /// rayon's global pool.
    #[default]
    Auto,
}

impl Parallelism {
    /// `0` means [`Parallelism::Auto`], `1` [`Parallelism::Sequential`].
    pub fn from_jobs(jobs: usize) -> Self {
        match jobs {
            0 => Parallelism::Auto,
            1 => Parallelism::Sequential,
            k => Parallelism::Threads(k),
        }
    }
}

pub struct Executor {
    mode: Parallelism,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Executor {
    pub fn new(mode: Parallelism) -> Self {
        #[cfg(feature = "parallel")]
        {
            let pool = match mode {
                Parallelism::Threads(k) => Some(
                    rayon::ThreadPoolBuilder::new().num_threads(k).build().expect("failed to build rayon thread pool"),
                ),
                _ => None,
            };
            Executor { mode, pool }
        }
        #[cfg(not(feature = "parallel"))]
        Executor { mode }
    }

    pub fn sequential() -> Self {
        Self::new(Parallelism::Sequential)
    }

    pub fn mode(&self) -> Parallelism {
        self.mode
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            match (&self.mode, &self.pool) {
                (Parallelism::Sequential, _) => items.iter().map(f).collect(),
                (_, Some(pool)) => pool.install(|| items.par_iter().map(&f).collect()),
                (_, None) => items.par_iter().map(f).collect(),
            }
        }
        #[cfg(not(feature = "parallel"))]
        items.iter().map(f).collect()
    }

    pub fn map_range<R, F>(&self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            match (&self.mode, &self.pool) {
                (Parallelism::Sequential, _) => range.map(f).collect(),
                (_, Some(pool)) => pool.install(|| range.into_par_iter().map(&f).collect()),
                (_, None) => range.into_par_iter().map(f).collect(),
            }
        }
        #[cfg(not(feature = "parallel"))]
        range.map(f).collect()
    }
}

impl Default for Executor {
    fn default() -> Self {
        Self::new(Parallelism::Auto)
    }
}

/// Neumaier-compensated sum in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
