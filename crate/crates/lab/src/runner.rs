use ogp_core::runner::TrialRunner;
use rayon::prelude::*;
use rayon::ThreadPool;

/// Runs trials on a dedicated rayon pool. Output order is trial order.
#[derive(Debug)]
pub struct RayonRunner {
    pool: ThreadPool,
}

impl RayonRunner {
    /// `threads == 0` lets rayon pick.
    pub fn new(threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        Ok(Self { pool })
    }
}

impl TrialRunner for RayonRunner {
    fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    fn map_trials<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool
            .install(|| (0..count).into_par_iter().map(&f).collect())
    }
}
