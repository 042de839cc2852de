//! Data-parallel execution of independent work items.
//!
//! With the `parallel` feature (on by default) work runs on a rayon pool,
//! optionally capped at a fixed number of threads. Without it, or in
//! [`Exec::sequential`] mode, everything runs in order on the calling thread.
//! Results never depend on the mode: maps preserve order and searches return
//! the first hit in item order.

use std::fmt;
#[cfg(feature = "parallel")]
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone)]
pub struct Exec {
    jobs: Option<usize>,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl fmt::Debug for Exec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Exec")
            .field("parallel", &self.is_parallel())
            .field("jobs", &self.jobs)
            .finish()
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::parallel(None)
    }
}

impl Exec {
    pub fn sequential() -> Exec {
        Exec {
            jobs: Some(1),
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// Parallel with at most `jobs` threads (`None`: rayon's default). Falls
    /// back to sequential when built without the `parallel` feature.
    pub fn parallel(jobs: Option<usize>) -> Exec {
        #[cfg(feature = "parallel")]
        {
            if jobs == Some(1) {
                return Exec::sequential();
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .expect("failed to build thread pool");
            Exec {
                jobs,
                pool: Some(Arc::new(pool)),
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = jobs;
            Exec::sequential()
        }
    }

    pub fn is_parallel(&self) -> bool {
        #[cfg(feature = "parallel")]
        {
            self.pool.is_some()
        }
        #[cfg(not(feature = "parallel"))]
        {
            false
        }
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| items.par_iter().map(&f).collect());
        }
        items.iter().map(f).collect()
    }

    pub fn map_range<R, F>(&self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| (0..n).into_par_iter().map(&f).collect());
        }
        (0..n).map(f).collect()
    }

    /// The first `Some` in item order.
    pub fn find_first<T, R, F>(&self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| items.par_iter().find_map_first(&f));
        }
        items.iter().find_map(f)
    }

    /// The first `Some` over `0..n`, in index order.
    pub fn find_first_index<R, F>(&self, n: usize, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| (0..n).into_par_iter().find_map_first(&f));
        }
        (0..n).find_map(f)
    }
}
