use alloc::vec::Vec;

use crate::rng::{poisson, Seed};
use crate::runner::TrialRunner;
use crate::stats::{summarize, Proportion, Summary};
use crate::{Error, Result};

/// Generation size at which a trial stops and is flagged.
pub const DEFAULT_POPULATION_CAP: u64 = 10_000_000;

const LN_2: f64 = core::f64::consts::LN_2;
const E: f64 = core::f64::consts::E;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchingMode {
    /// `(k-1)·Poisson(d)` offspring per individual.
    Scaled,
    /// `Poisson(d(k-1))` offspring per individual.
    #[default]
    Dominating,
}

/// Generation sizes `Z_0..=Z_x` of independent trials.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchingRun {
    pub d: f64,
    pub k: usize,
    pub generations: usize,
    pub mode: BranchingMode,
    pub cap: u64,
    /// Row-major, `generations + 1` entries per trial.
    sizes: Vec<u64>,
    truncated: Vec<bool>,
}

impl BranchingRun {
    pub fn trials(&self) -> usize {
        self.truncated.len()
    }

    pub fn sizes(&self, trial: usize) -> &[u64] {
        let w = self.generations + 1;
        &self.sizes[trial * w..(trial + 1) * w]
    }

    /// `Z_x` of every trial.
    pub fn final_sizes(&self) -> Vec<u64> {
        (0..self.trials())
            .map(|t| self.sizes(t)[self.generations])
            .collect()
    }

    pub fn generation(&self, g: usize) -> Vec<u64> {
        (0..self.trials()).map(|t| self.sizes(t)[g]).collect()
    }

    /// Trials whose population hit the cap. Their later generations hold
    /// the size at which they stopped.
    pub fn truncated(&self) -> &[bool] {
        &self.truncated
    }

    pub fn truncated_count(&self) -> usize {
        self.truncated.iter().filter(|&&t| t).count()
    }
}

fn check_params(d: f64, k: usize) -> Result<()> {
    if !(d >= 0.0) || !d.is_finite() {
        return Err(Error::InvalidParameter(
            "average degree d must be finite and nonnegative",
        ));
    }
    if k < 2 {
        return Err(Error::InvalidParameter("arity k must be at least 2"));
    }
    Ok(())
}

/// Trial `j` draws from stream `j` of `seed`. A generation of size `z`
/// is drawn in one step as `(k-1)·Poisson(d z)` or `Poisson(d(k-1) z)`,
/// the sums of `z` independent offspring counts.
#[allow(clippy::too_many_arguments)]
pub fn simulate_branching<TR: TrialRunner>(
    d: f64,
    k: usize,
    x: usize,
    trials: usize,
    mode: BranchingMode,
    cap: u64,
    seed: Seed,
    runner: &TR,
) -> Result<BranchingRun> {
    check_params(d, k)?;
    if trials == 0 || x == 0 {
        return Err(Error::InvalidParameter(
            "branching needs trials >= 1 and x >= 1",
        ));
    }
    let km1 = (k - 1) as u64;
    let rows = runner.map_trials(trials, |j| {
        let mut rng = seed.stream(j as u64);
        let mut row = Vec::with_capacity(x + 1);
        let mut z = 1u64;
        let mut truncated = false;
        row.push(z);
        for _ in 0..x {
            if !truncated && z > 0 {
                z = match mode {
                    BranchingMode::Scaled => km1.saturating_mul(poisson(&mut rng, d * z as f64)),
                    BranchingMode::Dominating => poisson(&mut rng, d * km1 as f64 * z as f64),
                };
                if z >= cap {
                    z = cap;
                    truncated = true;
                }
            }
            row.push(z);
        }
        (row, truncated)
    });
    let mut sizes = Vec::with_capacity(trials * (x + 1));
    let mut flags = Vec::with_capacity(trials);
    for (row, t) in rows {
        sizes.extend_from_slice(&row);
        flags.push(t);
    }
    Ok(BranchingRun {
        d,
        k,
        generations: x,
        mode,
        cap,
        sizes,
        truncated: flags,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCheck {
    /// `u (d(k-1) / ln 2)^x`.
    pub threshold: f64,
    /// `e^{1-u}`.
    pub bound: f64,
    pub tail: Proportion,
    pub truncated: usize,
    pub pass: bool,
}

/// Empirical `Pr[Z_x >= u (d(k-1)/ln 2)^x]` against `e^{1-u}`; passes when
/// the estimate is at most the bound plus four 99% radii. Truncated trials
/// count as exceeding.
#[allow(clippy::too_many_arguments)]
pub fn tail_check<TR: TrialRunner>(
    d: f64,
    k: usize,
    x: usize,
    u: f64,
    trials: usize,
    mode: BranchingMode,
    seed: Seed,
    runner: &TR,
) -> Result<TailCheck> {
    if !(u > 0.0) {
        return Err(Error::InvalidParameter("u must be positive"));
    }
    let run = simulate_branching(d, k, x, trials, mode, DEFAULT_POPULATION_CAP, seed, runner)?;
    let m = d * (k - 1) as f64;
    let threshold = u * libm::pow(m / LN_2, x as f64);
    let hits = run
        .final_sizes()
        .iter()
        .zip(run.truncated())
        .filter(|(&z, &t)| t || z as f64 >= threshold)
        .count();
    let tail = Proportion::new(hits as u64, trials as u64);
    let bound = libm::exp(1.0 - u);
    Ok(TailCheck {
        threshold,
        bound,
        tail,
        truncated: run.truncated_count(),
        pass: tail.estimate <= bound + 4.0 * tail.ci_radius(),
    })
}

/// `Pr[Poisson(rate) >= threshold]`, summed from the CDF side.
pub fn poisson_tail(rate: f64, threshold: f64) -> f64 {
    if threshold <= 0.0 {
        return 1.0;
    }
    let top = libm::ceil(threshold) as u64;
    let mut pmf = libm::exp(-rate);
    let mut cdf = 0.0;
    for j in 0..top {
        cdf += pmf;
        pmf *= rate / (j + 1) as f64;
    }
    (1.0 - cdf).max(0.0)
}

/// `E[exp(t Z_x)]` by iterating the offspring generating function:
/// `φ_0 = e^t`, `φ_j = f(φ_{j-1})`, where `f(s) = exp(m(s - 1))` for the
/// dominating law and `exp(d(s^{k-1} - 1))` for the scaled one.
pub fn exact_mgf(d: f64, k: usize, x: usize, t: f64, mode: BranchingMode) -> Result<f64> {
    check_params(d, k)?;
    let mut phi = libm::exp(t);
    for _ in 0..x {
        phi = match mode {
            BranchingMode::Dominating => libm::exp(d * (k - 1) as f64 * (phi - 1.0)),
            BranchingMode::Scaled => libm::exp(d * (libm::pow(phi, (k - 1) as f64) - 1.0)),
        };
        if !phi.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    Ok(phi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MgfCheck {
    /// `(ln 2 / (d(k-1)))^x`.
    pub t: f64,
    pub estimate: Summary,
    pub exact: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Empirical `E[exp(t Z_x)]` at `t = (ln 2/(d(k-1)))^x`; passes when it is
/// at most `e` plus four 99% radii.
#[allow(clippy::too_many_arguments)]
pub fn mgf_check<TR: TrialRunner>(
    d: f64,
    k: usize,
    x: usize,
    trials: usize,
    mode: BranchingMode,
    seed: Seed,
    runner: &TR,
) -> Result<MgfCheck> {
    if trials < 10_000 {
        return Err(Error::InvalidParameter(
            "mgf check needs at least 10^4 trials",
        ));
    }
    let m = d * (k - 1) as f64;
    if !(m > 0.0) {
        return Err(Error::InvalidParameter("mgf check needs d(k-1) > 0"));
    }
    let t = libm::pow(LN_2 / m, x as f64);
    let run = simulate_branching(d, k, x, trials, mode, DEFAULT_POPULATION_CAP, seed, runner)?;
    let values: Vec<f64> = run
        .final_sizes()
        .iter()
        .map(|&z| libm::exp(t * z as f64))
        .collect();
    let estimate = summarize(&values);
    Ok(MgfCheck {
        t,
        estimate,
        exact: exact_mgf(d, k, x, t, mode)?,
        bound: E,
        pass: estimate.mean <= E + 4.0 * estimate.ci_radius(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::Sequential;

    #[test]
    fn zero_degree_dies_out() {
        let r = simulate_branching(
            0.0,
            3,
            3,
            50,
            BranchingMode::Scaled,
            100,
            Seed::new(0, 1),
            &Sequential,
        )
        .unwrap();
        for t in 0..r.trials() {
            assert_eq!(r.sizes(t), &[1, 0, 0, 0]);
        }
    }

    #[test]
    fn extinction_is_absorbing_and_cap_flags() {
        let r = simulate_branching(
            1.0,
            2,
            6,
            500,
            BranchingMode::Dominating,
            5,
            Seed::new(0, 2),
            &Sequential,
        )
        .unwrap();
        for t in 0..r.trials() {
            let s = r.sizes(t);
            assert_eq!(s[0], 1);
            for w in s.windows(2) {
                if w[0] == 0 {
                    assert_eq!(w[1], 0);
                }
            }
            assert_eq!(r.truncated()[t], s.contains(&5));
        }
        assert!(r.truncated_count() > 0);
    }

    #[test]
    fn exact_mgf_at_one_generation() {
        let t = 0.01;
        let want = libm::exp(9.0 * (libm::exp(t) - 1.0));
        assert!((exact_mgf(3.0, 4, 1, t, BranchingMode::Dominating).unwrap() - want).abs() < 1e-14);
        assert_eq!(
            exact_mgf(3.0, 4, 3, 0.0, BranchingMode::Scaled).unwrap(),
            1.0
        );
    }

    #[test]
    fn poisson_tail_small_cases() {
        assert_eq!(poisson_tail(2.0, 0.0), 1.0);
        let want = 1.0 - libm::exp(-2.0) * (1.0 + 2.0);
        assert!((poisson_tail(2.0, 1.5) - want).abs() < 1e-15);
    }
}
