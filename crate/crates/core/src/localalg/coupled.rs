use alloc::vec;
use alloc::vec::Vec;
use rand_core::RngCore;

use super::rules::{qaoa_state, run_with_labels};
use super::spec::{AlgorithmKind, LocalAlgorithmSpec};
use crate::instances::{CoupledPair, NeighborhoodIndex, SpinConfig};
use crate::qaoa::{sample_conditional, sample_marginal};
use crate::rng::{bernoulli, uniform};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CoupledRunResult {
    pub sigma1: SpinConfig,
    pub sigma2: SpinConfig,
    /// Vertices whose radius-`p` balls use shared edges only, ascending.
    pub lplus: Vec<usize>,
    /// The thinned subset of `lplus`, ascending.
    pub l: Vec<usize>,
    /// Common spins on `l`, in the order of `l`.
    pub shared_labels: Vec<(usize, i8)>,
}

impl CoupledRunResult {
    pub fn overlap(&self) -> Result<f64> {
        crate::instances::overlap(&self.sigma1, &self.sigma2)
    }
}

/// `L⁺`: vertices `v` with every edge of `B(v, p)` shared, in both graphs.
pub fn compute_lplus(pair: &CoupledPair, p: usize) -> Result<Vec<usize>> {
    let shared = pair.shared_count();
    let i1 = NeighborhoodIndex::new(pair.graph1());
    let i2 = NeighborhoodIndex::new(pair.graph2());
    let mut s1 = i1.searcher();
    let mut s2 = i2.searcher();
    let mut out = Vec::new();
    for v in 0..pair.n() {
        s1.run(&[v], p)?;
        if s1.edges().iter().any(|&e| e >= shared) {
            continue;
        }
        s2.run(&[v], p)?;
        if s2.edges().iter().any(|&e| e >= shared) {
            continue;
        }
        out.push(v);
    }
    Ok(out)
}

/// Runs the algorithm on both graphs of `pair` with `t_plus`-shared
/// randomness.
///
/// Draw order on `rng`: the thinning of `L⁺` (one Bernoulli per vertex,
/// ascending), then the algorithm's randomness. Factor kinds share the
/// labels on `∪_{v∈L} B(v, p)` and draw the remaining labels of each graph
/// independently; the QAOA kind samples the spins on `L` from the first
/// graph's output law and then each graph's output conditioned on them.
pub fn coupled_runs<R: RngCore + ?Sized>(
    spec: &LocalAlgorithmSpec,
    pair: &CoupledPair,
    t_plus: f64,
    rng: &mut R,
) -> Result<CoupledRunResult> {
    if !(0.0..=1.0).contains(&t_plus) {
        return Err(Error::InvalidParameter("t_plus must lie in [0, 1]"));
    }
    let p = spec.radius();
    let lplus = compute_lplus(pair, p)?;
    let l: Vec<usize> = lplus
        .iter()
        .copied()
        .filter(|_| bernoulli(rng, t_plus))
        .collect();
    match spec.kind() {
        AlgorithmKind::Factor(_) => factor_coupled(spec, pair, lplus, l, rng),
        AlgorithmKind::Qaoa { .. } => {
            let psi1 = qaoa_state(spec, pair.graph1())?;
            let psi2 = qaoa_state(spec, pair.graph2())?;
            let shared_labels = sample_marginal(&psi1, &l, rng)?;
            let sigma1 = sample_conditional(&psi1, &shared_labels, rng)?;
            let sigma2 = sample_conditional(&psi2, &shared_labels, rng)?;
            Ok(CoupledRunResult {
                sigma1,
                sigma2,
                lplus,
                l,
                shared_labels,
            })
        }
    }
}

fn factor_coupled<R: RngCore + ?Sized>(
    spec: &LocalAlgorithmSpec,
    pair: &CoupledPair,
    lplus: Vec<usize>,
    l: Vec<usize>,
    rng: &mut R,
) -> Result<CoupledRunResult> {
    let n = pair.n();
    let p = spec.radius();
    let i1 = NeighborhoodIndex::new(pair.graph1());
    let mut search = i1.searcher();
    search.run(&l, p)?;
    let mut in_region = vec![false; n];
    for &(w, _) in search.visited() {
        in_region[w] = true;
    }
    let mut labels1 = vec![0.0; n];
    for v in 0..n {
        if in_region[v] {
            labels1[v] = uniform(rng);
        }
    }
    let mut labels2 = labels1.clone();
    for v in 0..n {
        if !in_region[v] {
            labels1[v] = uniform(rng);
        }
    }
    for v in 0..n {
        if !in_region[v] {
            labels2[v] = uniform(rng);
        }
    }
    let sigma1 = run_with_labels(spec, pair.graph1(), &labels1)?;
    let sigma2 = run_with_labels(spec, pair.graph2(), &labels2)?;
    let shared_labels = l.iter().map(|&v| (v, sigma1.values()[v])).collect();
    Ok(CoupledRunResult {
        sigma1,
        sigma2,
        lplus,
        l,
        shared_labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{sample_coupled, Hypergraph};
    use crate::qaoa::{InitialState, QaoaParams};
    use crate::rng::Seed;

    fn pair(shared: Vec<Vec<usize>>, p1: Vec<Vec<usize>>, p2: Vec<Vec<usize>>) -> CoupledPair {
        let g = |e| Hypergraph::new(6, 2, e).unwrap();
        CoupledPair::new(0.5, g(shared), g(p1), g(p2)).unwrap()
    }

    #[test]
    fn lplus_examples() {
        let pr = pair(vec![vec![0, 1], vec![1, 2]], vec![vec![3, 4]], vec![]);
        assert_eq!(compute_lplus(&pr, 1).unwrap(), vec![0, 1, 2, 5]);
        assert_eq!(compute_lplus(&pr, 0).unwrap(), vec![0, 1, 2, 3, 4, 5]);
        let pr = pair(vec![], vec![vec![0, 1], vec![2, 3]], vec![vec![4, 1]]);
        assert_eq!(compute_lplus(&pr, 2).unwrap(), vec![5]);
        // Balls of radius 2 reach the private edge through shared ones.
        let pr = pair(vec![vec![0, 1]], vec![vec![1, 2]], vec![]);
        assert_eq!(compute_lplus(&pr, 1).unwrap(), vec![0, 3, 4, 5]);
        assert_eq!(compute_lplus(&pr, 2).unwrap(), vec![3, 4, 5]);
    }

    #[test]
    fn agreement_on_l_is_exact() {
        let spec = LocalAlgorithmSpec::parity(1, 0.4).unwrap();
        for s in 0..50 {
            let mut rng = Seed::new(5, 6).stream(s);
            let pr = sample_coupled(40, 2.0, 3, 0.7, &mut rng).unwrap();
            let r = coupled_runs(&spec, &pr, 0.8, &mut rng).unwrap();
            assert!(r.l.iter().all(|v| r.lplus.contains(v)));
            for &(v, x) in &r.shared_labels {
                assert_eq!(r.sigma1.values()[v], x);
                assert_eq!(r.sigma2.values()[v], x);
            }
        }
    }

    #[test]
    fn full_sharing_gives_identical_outputs() {
        let spec = LocalAlgorithmSpec::threshold(2, 0.5).unwrap();
        let mut rng = Seed::new(1, 1).stream(0);
        let pr = sample_coupled(30, 3.0, 2, 1.0, &mut rng).unwrap();
        let r = coupled_runs(&spec, &pr, 1.0, &mut rng).unwrap();
        assert_eq!(r.lplus.len(), 30);
        assert_eq!(r.overlap().unwrap(), 1.0);

        let q = LocalAlgorithmSpec::qaoa(
            QaoaParams::new(vec![0.4], vec![0.9]).unwrap(),
            InitialState::Plus,
        );
        let pr = sample_coupled(8, 2.0, 2, 1.0, &mut rng).unwrap();
        let r = coupled_runs(&q, &pr, 1.0, &mut rng).unwrap();
        assert_eq!(r.sigma1, r.sigma2);
    }

    #[test]
    fn rejects_bad_t_plus() {
        let spec = LocalAlgorithmSpec::threshold(1, 0.5).unwrap();
        let pr = pair(vec![], vec![], vec![]);
        assert!(coupled_runs(&spec, &pr, 1.5, &mut Seed::new(0, 0).stream(0)).is_err());
    }
}
