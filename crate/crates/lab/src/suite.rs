//! Variance scaling of local-algorithm outputs across instance sizes.

use ogp_core::instances::{
    sample_coupled, sample_hypergraph, sample_signs, signed_energy, SignedInstance,
};
use ogp_core::localalg::{coupled_runs, run, AlgorithmKind, LocalAlgorithmSpec};
use ogp_core::qaoa::{build_cost_diagonal_with_cap, energy_expectation, evolve};
use ogp_core::rng::Seed;
use ogp_core::runner::TrialRunner;
use ogp_core::stats::{summarize, Summary};

use crate::error::{LabError, Result};

/// Lane offset of the overlap metric; size index `i` draws single runs
/// from lane `i` and coupled pairs from lane `OVERLAP_LANE_BASE + i`.
pub const OVERLAP_LANE_BASE: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// `|σ|/n`, the fraction of `+1` spins.
    Hamming,
    /// `H(σ)/n`.
    Energy,
    /// `R(σ1, σ2)` of a coupled run at the suite's `t`.
    Overlap,
    /// `⟨H_c⟩/n` of the QAOA state; quantum algorithms only.
    ExpectedEnergy,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::Energy => "energy",
            Metric::Overlap => "overlap",
            Metric::ExpectedEnergy => "expected_energy",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRow {
    pub n: usize,
    pub metric: Metric,
    pub summary: Summary,
    /// Whether the std interval sits strictly below the previous size's;
    /// `None` for the smallest `n`.
    pub decays: Option<bool>,
    pub lane: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteParams {
    pub d: f64,
    pub k: usize,
    pub signed: bool,
    pub t: f64,
}

fn single_metrics<TR: TrialRunner>(
    spec: &LocalAlgorithmSpec,
    n: usize,
    params: SuiteParams,
    trials: usize,
    seed: Seed,
    lane: u64,
    runner: &TR,
) -> Result<Vec<[f64; 3]>> {
    let quantum = spec.is_quantum();
    let per_trial = runner.map_trials(trials, |j| -> Result<[f64; 3]> {
        let mut rng = seed.lane(lane, j as u64);
        let g = sample_hypergraph(n, params.d, params.k, &mut rng)?;
        let inst = if params.signed {
            sample_signs(&g, &mut rng)
        } else {
            SignedInstance::unsigned(g)
        };
        let sigma = run(spec, &inst, &mut rng)?;
        let h = signed_energy(&inst, &sigma)? as f64;
        let expected = match spec.kind() {
            AlgorithmKind::Qaoa {
                params: qp,
                initial,
            } if quantum => {
                let diag = build_cost_diagonal_with_cap(&inst, spec.dense_cap())?;
                let state = evolve(qp, *initial, &diag)?;
                energy_expectation(&state, &diag)?
            }
            _ => 0.0,
        };
        let up = sigma.values().iter().filter(|&&s| s > 0).count() as f64;
        Ok([up / n as f64, h / n as f64, expected / n as f64])
    });
    per_trial.into_iter().collect()
}

/// Per-size spread of the output statistics over fresh instances and
/// algorithm randomness. Rows come grouped by `n`, metrics in the order
/// hamming, energy, overlap, then expected_energy for QAOA.
pub fn concentration_suite<TR: TrialRunner>(
    ns: &[usize],
    params: SuiteParams,
    spec: &LocalAlgorithmSpec,
    trials: usize,
    seed: Seed,
    runner: &TR,
) -> Result<Vec<SuiteRow>> {
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LabError::Config(
            "n list must be nonempty and strictly increasing".into(),
        ));
    }
    if trials < 2 {
        return Err(LabError::Config(
            "concentration suite needs at least two trials".into(),
        ));
    }
    let mut metrics = vec![Metric::Hamming, Metric::Energy, Metric::Overlap];
    if spec.is_quantum() {
        metrics.push(Metric::ExpectedEnergy);
    }
    let mut rows: Vec<SuiteRow> = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        let lane = i as u64;
        let single = single_metrics(spec, n, params, trials, seed, lane, runner)?;
        let overlap_lane = OVERLAP_LANE_BASE + lane;
        let overlaps = runner
            .map_trials(trials, |j| -> Result<f64> {
                let mut rng = seed.lane(overlap_lane, j as u64);
                let pair = sample_coupled(n, params.d, params.k, params.t, &mut rng)?;
                Ok(coupled_runs(spec, &pair, params.t, &mut rng)?.overlap()?)
            })
            .into_iter()
            .collect::<Result<Vec<f64>>>()?;
        for &metric in &metrics {
            let values: Vec<f64> = match metric {
                Metric::Hamming => single.iter().map(|v| v[0]).collect(),
                Metric::Energy => single.iter().map(|v| v[1]).collect(),
                Metric::ExpectedEnergy => single.iter().map(|v| v[2]).collect(),
                Metric::Overlap => overlaps.clone(),
            };
            let summary = summarize(&values);
            let decays = rows
                .iter()
                .rev()
                .find(|r| r.metric == metric)
                .map(|prev| summary.std_ci().1 < prev.summary.std_ci().0);
            rows.push(SuiteRow {
                n,
                metric,
                summary,
                decays,
                lane: if metric == Metric::Overlap {
                    overlap_lane
                } else {
                    lane
                },
            });
        }
    }
    Ok(rows)
}
