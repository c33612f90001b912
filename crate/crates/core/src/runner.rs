//! Trial execution strategy.
//!
//! Monte Carlo drivers in this crate hand independent trials to a
//! [`TrialRunner`]. Results always come back in trial order, and every
//! trial derives its own random stream from its index, so aggregates are
//! identical whichever runner executed them.

use alloc::vec::Vec;

pub trait TrialRunner: Sync {
    /// Worker count, for provenance only.
    fn threads(&self) -> usize {
        1
    }

    fn map_trials<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs trials one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl TrialRunner for Sequential {
    fn map_trials<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}
