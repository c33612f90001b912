use alloc::vec::Vec;

use super::doob::FiniteDist;
use crate::rng::Seed;
use crate::runner::TrialRunner;
use crate::stats::Proportion;
use crate::{Error, Result};

pub const PILOT_LANE: u64 = 1;
pub const MAIN_LANE: u64 = 2;

/// Minimum trial count accepted by [`empirical_tail`].
pub const MIN_TAIL_TRIALS: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub eps: f64,
    /// Mean of `f` from the pilot run (ten times as many trials).
    pub pilot_mean: f64,
    pub tail: Proportion,
}

impl TailEstimate {
    pub fn probability(&self) -> f64 {
        self.tail.estimate
    }

    /// 99% confidence radius of [`probability`](Self::probability).
    pub fn ci_radius(&self) -> f64 {
        self.tail.ci_radius()
    }
}

fn draw(dist: &FiniteDist, n: usize, seed: Seed, lane: u64, trial: usize) -> Vec<usize> {
    let mut rng = seed.lane(lane, trial as u64);
    (0..n).map(|_| dist.sample(&mut rng)).collect()
}

/// Monte Carlo estimate of `Pr[|f(X) - E f| >= eps]` for `X ~ dist^n`.
///
/// `E f` is replaced by the mean of a separate pilot run with `10 × trials`
/// samples. Trial `i` of each run uses stream `i` of its own lane.
pub fn empirical_tail<F, T>(
    f: F,
    dist: &FiniteDist,
    n: usize,
    eps: f64,
    trials: usize,
    seed: Seed,
    runner: &T,
) -> Result<TailEstimate>
where
    F: Fn(&[usize]) -> f64 + Sync + Send,
    T: TrialRunner,
{
    if trials < MIN_TAIL_TRIALS {
        return Err(Error::InvalidParameter(
            "empirical tail needs at least 1000 trials",
        ));
    }
    if !(eps >= 0.0) {
        return Err(Error::InvalidParameter("eps must be nonnegative"));
    }
    let pilot_trials = 10 * trials;
    let pilot = runner.map_trials(pilot_trials, |i| f(&draw(dist, n, seed, PILOT_LANE, i)));
    let pilot_mean = pilot.iter().sum::<f64>() / pilot_trials as f64;
    let hits = runner
        .map_trials(trials, |i| {
            let v = f(&draw(dist, n, seed, MAIN_LANE, i));
            (v - pilot_mean).abs() >= eps
        })
        .into_iter()
        .filter(|&hit| hit)
        .count();
    Ok(TailEstimate {
        eps,
        pilot_mean,
        tail: Proportion::new(hits as u64, trials as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::Sequential;

    #[test]
    fn zero_eps_always_deviates() {
        let dist = FiniteDist::biased(2, 0.3, 0).unwrap();
        let est = empirical_tail(
            |x: &[usize]| x.iter().sum::<usize>() as f64,
            &dist,
            10,
            0.0,
            1000,
            Seed::new(1, 1),
            &Sequential,
        )
        .unwrap();
        assert_eq!(est.probability(), 1.0);
    }

    #[test]
    fn deterministic_function_never_deviates() {
        let dist = FiniteDist::biased(3, 0.5, 1).unwrap();
        let est = empirical_tail(
            |_: &[usize]| 0.1,
            &dist,
            5,
            1e-6,
            1000,
            Seed::new(1, 2),
            &Sequential,
        )
        .unwrap();
        assert_eq!(est.probability(), 0.0);
        assert!((est.pilot_mean - 0.1).abs() < 1e-12);
    }

    #[test]
    fn too_few_trials() {
        let dist = FiniteDist::biased(2, 0.5, 0).unwrap();
        assert!(empirical_tail(
            |_: &[usize]| 0.0,
            &dist,
            5,
            1.0,
            999,
            Seed::new(0, 0),
            &Sequential
        )
        .is_err());
    }
}
