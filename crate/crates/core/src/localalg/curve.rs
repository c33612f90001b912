use alloc::vec::Vec;

use super::coupled::coupled_runs;
use super::rules::run;
use super::spec::LocalAlgorithmSpec;
use crate::instances::{sample_coupled, sample_hypergraph};
use crate::rng::Seed;
use crate::runner::TrialRunner;
use crate::stats::{summarize, Summary};
use crate::{Error, Result};

/// Additive slack in the adjacent-point smoothness screen.
pub const LIPSCHITZ_SLACK: f64 = 0.1;

pub const MAGNETIZATION_LANE: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub t: f64,
    pub mean: f64,
    pub std: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: usize,
}

impl CurvePoint {
    pub fn ci_radius(&self) -> f64 {
        (self.ci_high - self.ci_low) / 2.0
    }
}

/// Mean overlap of coupled runs along `t_grid`.
///
/// Grid point `i` uses lane `i` of `seed` and trial `j` its stream `j`; each
/// trial samples a fresh coupled pair and one coupled run. `t_plus`
/// defaults to the grid value.
#[allow(clippy::too_many_arguments)]
pub fn overlap_curve<TR: TrialRunner>(
    spec: &LocalAlgorithmSpec,
    n: usize,
    d: f64,
    k: usize,
    t_grid: &[f64],
    t_plus: Option<f64>,
    trials: usize,
    seed: Seed,
    runner: &TR,
) -> Result<Vec<CurvePoint>> {
    if trials == 0 {
        return Err(Error::InvalidParameter(
            "overlap curve needs at least one trial",
        ));
    }
    if t_grid.iter().any(|t| !(0.0..=1.0).contains(t)) {
        return Err(Error::InvalidParameter("grid values must lie in [0, 1]"));
    }
    let mut out = Vec::with_capacity(t_grid.len());
    for (gi, &t) in t_grid.iter().enumerate() {
        let tp = t_plus.unwrap_or(t);
        let values = runner.map_trials(trials, |j| -> Result<f64> {
            let mut rng = seed.lane(gi as u64, j as u64);
            let pair = sample_coupled(n, d, k, t, &mut rng)?;
            coupled_runs(spec, &pair, tp, &mut rng)?.overlap()
        });
        let values = values.into_iter().collect::<Result<Vec<f64>>>()?;
        let s = summarize(&values);
        let (ci_low, ci_high) = s.ci();
        out.push(CurvePoint {
            t,
            mean: s.mean,
            std: s.std,
            ci_low,
            ci_high,
            trials,
        });
    }
    Ok(out)
}

/// Indices `i` where `|R(t_{i+1}) - R(t_i)|` exceeds
/// `3 (CI_i + CI_{i+1} + LIPSCHITZ_SLACK)`.
pub fn smoothness_screen(points: &[CurvePoint]) -> Vec<usize> {
    points
        .windows(2)
        .enumerate()
        .filter(|(_, w)| {
            let bound = 3.0 * (w[0].ci_radius() + w[1].ci_radius() + LIPSCHITZ_SLACK);
            (w[1].mean - w[0].mean).abs() > bound
        })
        .map(|(i, _)| i)
        .collect()
}

/// Per-trial magnetization `(1/n) Σ σ_v` of single runs on fresh
/// instances.
pub fn magnetization<TR: TrialRunner>(
    spec: &LocalAlgorithmSpec,
    n: usize,
    d: f64,
    k: usize,
    trials: usize,
    seed: Seed,
    runner: &TR,
) -> Result<Summary> {
    if trials == 0 {
        return Err(Error::InvalidParameter(
            "magnetization needs at least one trial",
        ));
    }
    let values = runner.map_trials(trials, |j| -> Result<f64> {
        let mut rng = seed.lane(MAGNETIZATION_LANE, j as u64);
        let g = sample_hypergraph(n, d, k, &mut rng)?;
        let x = run(spec, &g, &mut rng)?;
        Ok(x.values().iter().map(|&s| s as f64).sum::<f64>() / n as f64)
    });
    let values = values.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(summarize(&values))
}
