use alloc::vec::Vec;
use rand_core::RngCore;

use super::spec::{AlgorithmKind, FactorRule, LocalAlgorithmSpec};
use crate::instances::{BallSearch, Clauses, Hypergraph, NeighborhoodIndex, SpinConfig};
use crate::qaoa::{build_cost_diagonal_with_cap, evolve, sample_output, Statevector};
use crate::rng::uniform;
use crate::{Error, Result};

/// One sample of the algorithm's output on `graph`.
///
/// Factor kinds draw `n` uniform labels in vertex order and then apply the
/// rule at every vertex. The QAOA kind simulates the full circuit and
/// measures all qubits; clause signs are honored.
pub fn run<C, R>(spec: &LocalAlgorithmSpec, graph: &C, rng: &mut R) -> Result<SpinConfig>
where
    C: Clauses + ?Sized,
    R: RngCore + ?Sized,
{
    match spec.kind() {
        AlgorithmKind::Factor(_) => {
            let labels = draw_labels(graph.vertex_count(), rng);
            run_with_labels(spec, graph.hypergraph(), &labels)
        }
        AlgorithmKind::Qaoa { .. } => {
            let state = qaoa_state(spec, graph)?;
            sample_output(&state, rng)
        }
    }
}

/// Applies a factor rule to a fixed label field.
pub fn run_with_labels(
    spec: &LocalAlgorithmSpec,
    graph: &Hypergraph,
    labels: &[f64],
) -> Result<SpinConfig> {
    let rule = factor_rule(spec)?;
    if labels.len() != graph.n() {
        return Err(Error::LengthMismatch {
            expected: graph.n(),
            actual: labels.len(),
        });
    }
    let index = NeighborhoodIndex::new(graph);
    let mut search = index.searcher();
    let mut spins = Vec::with_capacity(graph.n());
    for v in 0..graph.n() {
        spins.push(decide_at(&rule, &mut search, v, spec.radius(), labels)?);
    }
    SpinConfig::new(spins)
}

pub(crate) fn factor_rule(spec: &LocalAlgorithmSpec) -> Result<FactorRule> {
    match spec.kind() {
        AlgorithmKind::Factor(rule) => Ok(*rule),
        AlgorithmKind::Qaoa { .. } => Err(Error::InvalidParameter(
            "label fields only apply to factor rules",
        )),
    }
}

pub(crate) fn decide_at(
    rule: &FactorRule,
    search: &mut BallSearch<'_, '_>,
    v: usize,
    radius: usize,
    labels: &[f64],
) -> Result<i8> {
    search.run(&[v], radius)?;
    Ok(rule.decide_iter(
        search.visited().iter().map(|&(w, _)| w),
        search.edges().len(),
        labels,
    ))
}

pub(crate) fn draw_labels<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| uniform(rng)).collect()
}

pub(crate) fn qaoa_state<C: Clauses + ?Sized>(
    spec: &LocalAlgorithmSpec,
    graph: &C,
) -> Result<Statevector> {
    match spec.kind() {
        AlgorithmKind::Qaoa { params, initial } => {
            let diag = build_cost_diagonal_with_cap(graph, spec.dense_cap())?;
            evolve(params, *initial, &diag)
        }
        AlgorithmKind::Factor(_) => Err(Error::InvalidParameter(
            "statevector only exists for the QAOA kind",
        )),
    }
}
