use alloc::vec::Vec;

use super::rules::{decide_at, draw_labels, factor_rule, qaoa_state};
use super::spec::{AlgorithmKind, LocalAlgorithmSpec};
use crate::instances::{Hypergraph, NeighborhoodIndex};
use crate::qaoa::marginal_mass;
use crate::rng::Seed;
use crate::runner::TrialRunner;
use crate::stats::{Proportion, Z99};
use crate::{Error, Result};

/// Tolerance for audits computed from exact statevector marginals.
pub const EXACT_AUDIT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphEdit {
    Add(Vec<usize>),
    /// Removes the edge with this id.
    Remove(usize),
}

impl GraphEdit {
    pub fn apply(&self, graph: &Hypergraph) -> Result<Hypergraph> {
        match self {
            GraphEdit::Add(edge) => graph.with_edge_added(edge),
            GraphEdit::Remove(id) => graph.with_edge_removed(*id),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalAudit {
    /// `Pr[σ_v = +1]` before and after the edit.
    pub before: f64,
    pub after: f64,
    /// Total-variation distance between the two laws of `σ_v`.
    pub distance: f64,
    pub tolerance: f64,
    pub exact: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndependenceAudit {
    pub covariance: f64,
    /// Pearson correlation, 0 when either spin is constant.
    pub correlation: f64,
    pub tolerance: f64,
    pub exact: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditRequest {
    Marginal { vertex: usize, edit: GraphEdit },
    Independence { first: usize, second: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AuditReport {
    Marginal(MarginalAudit),
    Independence(IndependenceAudit),
}

impl AuditReport {
    pub fn pass(&self) -> bool {
        match self {
            AuditReport::Marginal(a) => a.pass,
            AuditReport::Independence(a) => a.pass,
        }
    }
}

pub fn locality_audit<TR: TrialRunner>(
    spec: &LocalAlgorithmSpec,
    graph: &Hypergraph,
    request: &AuditRequest,
    trials: usize,
    seed: Seed,
    runner: &TR,
) -> Result<AuditReport> {
    Ok(match request {
        AuditRequest::Marginal { vertex, edit } => AuditReport::Marginal(marginal_audit(
            spec, graph, *vertex, edit, trials, seed, runner,
        )?),
        AuditRequest::Independence { first, second } => AuditReport::Independence(
            independence_audit(spec, graph, *first, *second, trials, seed, runner)?,
        ),
    })
}

fn ball_signature(graph: &Hypergraph, v: usize, p: usize) -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
    let b = NeighborhoodIndex::new(graph).ball(v, p)?;
    let mut tuples: Vec<Vec<usize>> = b.edges.iter().map(|&e| graph.edge(e).to_vec()).collect();
    tuples.sort_unstable();
    Ok((b.vertices, tuples))
}

/// Compares the law of `σ_v` before and after an edit that leaves
/// `B(v, p)` untouched.
///
/// Factor kinds run `trials` independent samples on each graph (lanes 0
/// and 1) and pass when the total-variation estimate is within three
/// 99% radii of the difference. The QAOA kind compares exact marginals.
pub fn marginal_audit<TR: TrialRunner>(
    spec: &LocalAlgorithmSpec,
    graph: &Hypergraph,
    v: usize,
    edit: &GraphEdit,
    trials: usize,
    seed: Seed,
    runner: &TR,
) -> Result<MarginalAudit> {
    let p = spec.radius();
    let edited = edit.apply(graph)?;
    if ball_signature(graph, v, p)? != ball_signature(&edited, v, p)? {
        return Err(Error::ForbiddenEdit {
            vertex: v,
            radius: p,
        });
    }
    match spec.kind() {
        AlgorithmKind::Factor(_) => {
            if trials == 0 {
                return Err(Error::InvalidParameter("audit needs at least one trial"));
            }
            let a = up_fraction(spec, graph, v, trials, seed, 0, runner)?;
            let b = up_fraction(spec, &edited, v, trials, seed, 1, runner)?;
            let distance = (a.estimate - b.estimate).abs();
            let radius = Z99 * libm::sqrt(a.std_err * a.std_err + b.std_err * b.std_err);
            let tolerance = 3.0 * radius;
            Ok(MarginalAudit {
                before: a.estimate,
                after: b.estimate,
                distance,
                tolerance,
                exact: false,
                pass: distance <= tolerance,
            })
        }
        AlgorithmKind::Qaoa { .. } => {
            let before = marginal_mass(&qaoa_state(spec, graph)?, &[(v, 1)])?;
            let after = marginal_mass(&qaoa_state(spec, &edited)?, &[(v, 1)])?;
            let distance = (before - after).abs();
            Ok(MarginalAudit {
                before,
                after,
                distance,
                tolerance: EXACT_AUDIT_TOLERANCE,
                exact: true,
                pass: distance <= EXACT_AUDIT_TOLERANCE,
            })
        }
    }
}

fn up_fraction<TR: TrialRunner>(
    spec: &LocalAlgorithmSpec,
    graph: &Hypergraph,
    v: usize,
    trials: usize,
    seed: Seed,
    lane: u64,
    runner: &TR,
) -> Result<Proportion> {
    let rule = factor_rule(spec)?;
    let index = NeighborhoodIndex::new(graph);
    let spins = runner.map_trials(trials, |j| -> Result<i8> {
        let labels = draw_labels(graph.n(), &mut seed.lane(lane, j as u64));
        decide_at(&rule, &mut index.searcher(), v, spec.radius(), &labels)
    });
    let mut hits = 0u64;
    for s in spins {
        if s? == 1 {
            hits += 1;
        }
    }
    Ok(Proportion::new(hits, trials as u64))
}

/// Correlation of `σ_u` and `σ_w` for vertices more than `2p` apart.
///
/// Factor kinds estimate it from `trials` joint samples and pass when
/// `|corr| <= 3 Z99 / sqrt(trials)`. The QAOA kind computes the exact
/// covariance.
pub fn independence_audit<TR: TrialRunner>(
    spec: &LocalAlgorithmSpec,
    graph: &Hypergraph,
    u: usize,
    w: usize,
    trials: usize,
    seed: Seed,
    runner: &TR,
) -> Result<IndependenceAudit> {
    let p = spec.radius();
    let index = NeighborhoodIndex::new(graph);
    if index.distance_within(u, w, 2 * p)?.is_some() {
        return Err(Error::TooClose(u, w));
    }
    match spec.kind() {
        AlgorithmKind::Factor(rule) => {
            if trials < 2 {
                return Err(Error::InvalidParameter(
                    "independence audit needs at least two trials",
                ));
            }
            let pairs = runner.map_trials(trials, |j| -> Result<(i8, i8)> {
                let labels = draw_labels(graph.n(), &mut seed.stream(j as u64));
                let mut search = index.searcher();
                let a = decide_at(rule, &mut search, u, p, &labels)?;
                let b = decide_at(rule, &mut search, w, p, &labels)?;
                Ok((a, b))
            });
            let pairs = pairs.into_iter().collect::<Result<Vec<_>>>()?;
            let nf = trials as f64;
            let (mut sa, mut sb, mut sab) = (0.0, 0.0, 0.0);
            for &(a, b) in &pairs {
                sa += a as f64;
                sb += b as f64;
                sab += (a * b) as f64;
            }
            let (ma, mb) = (sa / nf, sb / nf);
            let covariance = sab / nf - ma * mb;
            let correlation = correlation(covariance, 1.0 - ma * ma, 1.0 - mb * mb);
            let tolerance = 3.0 * Z99 / libm::sqrt(nf);
            Ok(IndependenceAudit {
                covariance,
                correlation,
                tolerance,
                exact: false,
                pass: correlation.abs() <= tolerance,
            })
        }
        AlgorithmKind::Qaoa { .. } => {
            let psi = qaoa_state(spec, graph)?;
            let mean = |fixed: &[(usize, i8)]| -> Result<f64> {
                Ok(2.0 * marginal_mass(&psi, fixed)? - 1.0)
            };
            let ma = mean(&[(u, 1)])?;
            let mb = mean(&[(w, 1)])?;
            // E[σ_u σ_w] = 1 - 2 Pr[σ_u != σ_w]
            let differ =
                marginal_mass(&psi, &[(u, 1), (w, -1)])? + marginal_mass(&psi, &[(u, -1), (w, 1)])?;
            let covariance = 1.0 - 2.0 * differ - ma * mb;
            Ok(IndependenceAudit {
                covariance,
                correlation: correlation(covariance, 1.0 - ma * ma, 1.0 - mb * mb),
                tolerance: EXACT_AUDIT_TOLERANCE,
                exact: true,
                pass: covariance.abs() <= EXACT_AUDIT_TOLERANCE,
            })
        }
    }
}

fn correlation(cov: f64, var_a: f64, var_b: f64) -> f64 {
    let denom = libm::sqrt(var_a.max(0.0) * var_b.max(0.0));
    if denom > 1e-15 {
        cov / denom
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qaoa::{InitialState, QaoaParams};
    use crate::runner::Sequential;
    use alloc::vec;

    fn path() -> Hypergraph {
        Hypergraph::new(
            8,
            2,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![5, 6]],
        )
        .unwrap()
    }

    #[test]
    fn edits_inside_the_ball_are_refused() {
        let spec = LocalAlgorithmSpec::threshold(1, 0.5).unwrap();
        let g = path();
        let err = marginal_audit(
            &spec,
            &g,
            0,
            &GraphEdit::Remove(0),
            10,
            Seed::new(0, 0),
            &Sequential,
        );
        assert!(matches!(err, Err(Error::ForbiddenEdit { .. })));
        let err = marginal_audit(
            &spec,
            &g,
            0,
            &GraphEdit::Add(vec![0, 7]),
            10,
            Seed::new(0, 0),
            &Sequential,
        );
        assert!(matches!(err, Err(Error::ForbiddenEdit { .. })));
        let err = independence_audit(&spec, &g, 0, 2, 10, Seed::new(0, 0), &Sequential);
        assert!(matches!(err, Err(Error::TooClose(0, 2))));
    }

    #[test]
    fn factor_audits_pass() {
        let spec = LocalAlgorithmSpec::threshold(1, 0.45).unwrap();
        let g = path();
        let m = marginal_audit(
            &spec,
            &g,
            0,
            &GraphEdit::Add(vec![2, 7]),
            4000,
            Seed::new(3, 1),
            &Sequential,
        )
        .unwrap();
        assert!(m.pass, "{m:?}");
        let m = independence_audit(&spec, &g, 0, 3, 4000, Seed::new(3, 2), &Sequential).unwrap();
        assert!(m.pass, "{m:?}");
        let spec0 = LocalAlgorithmSpec::threshold(2, 0.5).unwrap();
        assert!(independence_audit(&spec0, &g, 0, 3, 10, Seed::new(0, 0), &Sequential).is_err());
    }

    #[test]
    fn qaoa_audits_are_exact() {
        let q = LocalAlgorithmSpec::qaoa(
            QaoaParams::new(vec![0.7], vec![0.4]).unwrap(),
            InitialState::Plus,
        );
        let g = path();
        let m = marginal_audit(
            &q,
            &g,
            0,
            &GraphEdit::Add(vec![2, 5]),
            0,
            Seed::new(0, 0),
            &Sequential,
        )
        .unwrap();
        assert!(m.pass && m.exact, "{m:?}");
        let m = independence_audit(&q, &g, 0, 3, 0, Seed::new(0, 0), &Sequential).unwrap();
        assert!(m.pass, "{m:?}");
        // Depth 0 is a product state, so even neighbours decouple.
        let q0 =
            LocalAlgorithmSpec::qaoa(QaoaParams::new(vec![], vec![]).unwrap(), InitialState::Plus);
        let m = independence_audit(&q0, &g, 0, 1, 0, Seed::new(0, 0), &Sequential).unwrap();
        assert!(m.pass);
    }
}
