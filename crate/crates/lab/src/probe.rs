//! Exhaustive overlap probe on small coupled pairs.

use ogp_core::instances::{sample_coupled, sample_signs, Clauses, CoupledPair, SignedInstance};
use ogp_core::qaoa::build_cost_diagonal_with_cap;
use ogp_core::rng::{rademacher, Seed, StreamRng};
use ogp_core::runner::TrialRunner;

use crate::error::{LabError, Result};

/// Largest `n` the probe enumerates.
pub const PROBE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeTrial {
    pub optimum: [f64; 2],
    pub minimum: [f64; 2],
    /// Number of near-optimal configurations of each graph.
    pub admitted: [u64; 2],
    /// `histogram[h]` counts near-optimal pairs at Hamming distance `h`,
    /// i.e. overlap `(n - 2h) / n`.
    pub histogram: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub n: usize,
    pub trials: Vec<ProbeTrial>,
}

impl ProbeResult {
    /// Pair counts summed over trials, by Hamming distance.
    pub fn total_counts(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.n + 1];
        for t in &self.trials {
            for (o, c) in out.iter_mut().zip(&t.histogram) {
                *o += c;
            }
        }
        out
    }

    /// Average over trials of each trial's normalized histogram.
    pub fn mean_mass(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n + 1];
        for t in &self.trials {
            let total: u64 = t.histogram.iter().sum();
            for (o, &c) in out.iter_mut().zip(&t.histogram) {
                *o += c as f64 / total as f64;
            }
        }
        let count = self.trials.len().max(1) as f64;
        out.iter_mut().for_each(|o| *o /= count);
        out
    }
}

fn walsh_hadamard(a: &mut [i64]) {
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*x, *y);
                *x = u + v;
                *y = u - v;
            }
        }
        h *= 2;
    }
}

/// `c[z] = Σ_x a[x] b[x ^ z]` through the Walsh–Hadamard transform; all
/// arithmetic is exact in `i64` for lengths up to `2^20` and 0/1 inputs.
pub fn xor_correlation(a: &[i64], b: &[i64]) -> Vec<i64> {
    let len = a.len();
    let mut fa = a.to_vec();
    let mut fb = b.to_vec();
    walsh_hadamard(&mut fa);
    walsh_hadamard(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    walsh_hadamard(&mut fa);
    fa.iter().map(|v| v / len as i64).collect()
}

fn near_optimal<C: Clauses>(clauses: &C, eta: f64) -> Result<(Vec<i64>, f64, f64)> {
    let diag = build_cost_diagonal_with_cap(clauses, PROBE_CAP)?;
    let (hi, lo) = (diag.max(), diag.min());
    let cut = hi - eta * (hi - lo);
    let mask = diag.values().iter().map(|&h| i64::from(h >= cut)).collect();
    Ok((mask, hi, lo))
}

/// One coupled pair at `t` and the overlap histogram of its near-optimal
/// cross pairs. A configuration is near-optimal when
/// `H >= H* - eta (H* - H_min)`, so `eta = 0` admits the optima only and
/// `eta = 1` admits everything.
/// Signs for both graphs of a pair; shared edges carry the same signs in
/// both. Graph 1 is signed first, then graph 2's private edges.
pub fn coupled_signs(
    pair: &CoupledPair,
    rng: &mut StreamRng,
) -> Result<(SignedInstance, SignedInstance)> {
    let i1 = sample_signs(pair.graph1(), rng);
    let k = pair.k();
    let shared = pair.shared_count();
    let mut rows: Vec<Vec<i8>> = i1.sign_rows().take(shared).map(<[i8]>::to_vec).collect();
    for _ in shared..pair.graph2().edge_count() {
        rows.push((0..k).map(|_| rademacher(rng)).collect());
    }
    let i2 = SignedInstance::new(pair.graph2().clone(), rows)?;
    Ok((i1, i2))
}

#[allow(clippy::too_many_arguments)]
pub fn probe_trial(
    n: usize,
    d: f64,
    k: usize,
    eta: f64,
    t: f64,
    signed: bool,
    seed: Seed,
    trial: u64,
) -> Result<ProbeTrial> {
    if n > PROBE_CAP {
        return Err(ogp_core::Error::CapExceeded {
            what: "ogp probe",
            size: n,
            cap: PROBE_CAP,
        }
        .into());
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(LabError::Config("eta must lie in [0, 1]".into()));
    }
    let mut rng = seed.stream(trial);
    let pair = sample_coupled(n, d, k, t, &mut rng)?;
    let (i1, i2) = if signed {
        coupled_signs(&pair, &mut rng)?
    } else {
        (
            SignedInstance::unsigned(pair.graph1().clone()),
            SignedInstance::unsigned(pair.graph2().clone()),
        )
    };
    let (a, h1, l1) = near_optimal(&i1, eta)?;
    let (b, h2, l2) = near_optimal(&i2, eta)?;
    let corr = xor_correlation(&a, &b);
    let mut histogram = vec![0u64; n + 1];
    for (z, &c) in corr.iter().enumerate() {
        histogram[z.count_ones() as usize] += c as u64;
    }
    Ok(ProbeTrial {
        optimum: [h1, h2],
        minimum: [l1, l2],
        admitted: [a.iter().sum::<i64>() as u64, b.iter().sum::<i64>() as u64],
        histogram,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn ogp_probe<TR: TrialRunner>(
    n: usize,
    d: f64,
    k: usize,
    eta: f64,
    t: f64,
    signed: bool,
    trials: usize,
    seed: Seed,
    runner: &TR,
) -> Result<ProbeResult> {
    let trials = runner
        .map_trials(trials, |j| {
            probe_trial(n, d, k, eta, t, signed, seed, j as u64)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeResult { n, trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ogp_core::runner::Sequential;

    #[test]
    fn correlation_matches_direct_sum() {
        let a: Vec<i64> = (0..16).map(|x| (x * 7 % 3 == 0) as i64).collect();
        let b: Vec<i64> = (0..16).map(|x| (x % 5 < 2) as i64).collect();
        let c = xor_correlation(&a, &b);
        for z in 0..16 {
            let direct: i64 = (0..16).map(|x| a[x] * b[x ^ z]).sum();
            assert_eq!(c[z], direct);
        }
    }

    #[test]
    fn everything_admitted_is_symmetric() {
        let r = ogp_probe(8, 3.0, 4, 1.0, 0.0, false, 3, Seed::new(1, 2), &Sequential).unwrap();
        for t in &r.trials {
            assert_eq!(t.admitted, [256, 256]);
            for h in 0..=8 {
                assert_eq!(t.histogram[h], t.histogram[8 - h]);
            }
        }
    }

    #[test]
    fn identical_graphs_contain_full_overlap() {
        let r = ogp_probe(10, 3.0, 3, 0.0, 1.0, true, 4, Seed::new(1, 3), &Sequential).unwrap();
        for t in &r.trials {
            assert!(t.histogram[0] > 0);
            assert_eq!(t.histogram[0], t.admitted[0]);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(probe_trial(21, 3.0, 3, 0.1, 0.0, false, Seed::new(0, 0), 0).is_err());
    }
}
