//! Deterministic parallel maps.
//!
//! Work item `i` always receives index `i` (and hence RNG stream `i`), and
//! results come back in index order, so any reduction over them is
//! independent of the number of workers.

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{Error, Result};

/// A dedicated pool with `workers` threads, or one thread per core when `None`.
pub fn pool(workers: Option<usize>) -> Result<ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Error::Parameter("worker count must be positive".into()));
        }
        builder = builder.num_threads(w);
    }
    builder.build().map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))
}

/// `(0..count).map(f)` evaluated on `pool`, collected in index order.
pub fn par_map_indexed<T, F>(pool: &ThreadPool, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    pool.install(|| (0..count).into_par_iter().map(&f).collect())
}

/// Fallible variant; the error of the lowest failing index is returned.
pub fn try_par_map_indexed<T, F>(pool: &ThreadPool, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    par_map_indexed(pool, count, f).into_iter().collect()
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}
