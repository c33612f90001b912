use alloc::vec::Vec;

use super::cost::build_cost_diagonal_with_cap;
use super::evolve::{evolve, z_product_expectation};
use super::params::{InitialState, QaoaParams};
use crate::instances::{Clauses, Hypergraph, NeighborhoodIndex, SignedInstance};
use crate::{Error, Result};

/// Causal cone of one edge's `Z` product under a depth-`p` circuit.
///
/// `vertices[i]` is the original id of local qubit `i` (relabeling keeps the
/// original order). `edges` are the original ids of the clauses kept, those
/// touching a vertex within `p - 1` steps of the target edge. The local
/// instance carries each clause's sign on its first position.
#[derive(Debug, Clone, PartialEq)]
pub struct Lightcone {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub instance: SignedInstance,
    /// Local qubits with odd multiplicity in the target edge.
    pub target_mask: u64,
}

pub fn edge_lightcone<C: Clauses + ?Sized>(
    clauses: &C,
    edge: usize,
    p: usize,
) -> Result<Lightcone> {
    let graph = clauses.hypergraph();
    if edge >= graph.edge_count() {
        return Err(Error::InvalidParameter("edge id out of range"));
    }
    let index = NeighborhoodIndex::new(graph);
    let (order, edges) = index.explore(graph.edge(edge), p)?;
    let mut vertices: Vec<usize> = order.into_iter().map(|(v, _)| v).collect();
    vertices.sort_unstable();
    let local = |v: usize| vertices.binary_search(&v).expect("cone vertex");

    let k = graph.k();
    let mut flat = Vec::with_capacity(edges.len() * k);
    let mut signs = Vec::with_capacity(edges.len() * k);
    for &e in &edges {
        flat.extend(graph.edge(e).iter().map(|&v| local(v)));
        signs.push(clauses.clause_sign(e));
        signs.extend(core::iter::repeat_n(1, k - 1));
    }
    let sub = Hypergraph::from_flat(vertices.len(), k, flat)?;
    let instance = SignedInstance::from_flat(sub, signs)?;
    let target_mask = graph
        .edge(edge)
        .iter()
        .fold(0u64, |m, &v| m ^ (1u64 << local(v).min(63)));
    Ok(Lightcone {
        vertices,
        edges,
        instance,
        target_mask,
    })
}

/// `⟨Π_{v∈e} Z_v⟩` after the circuit, simulated on the edge's causal cone
/// only.
pub fn lightcone_edge_expectation<C: Clauses + ?Sized>(
    clauses: &C,
    params: &QaoaParams,
    initial: InitialState,
    edge: usize,
    cap: usize,
) -> Result<f64> {
    let cone = edge_lightcone(clauses, edge, params.depth())?;
    let size = cone.vertices.len();
    if size > cap {
        return Err(Error::CapExceeded {
            what: "lightcone",
            size,
            cap,
        });
    }
    let diag = build_cost_diagonal_with_cap(&cone.instance, cap)?;
    let state = evolve(params, initial, &diag)?;
    Ok(z_product_expectation(&state, cone.target_mask))
}
