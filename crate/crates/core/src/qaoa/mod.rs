//! Fixed-angle QAOA on hypergraph cost Hamiltonians.
//!
//! Conventions: qubit `i` is bit `i` of the basis index, bit 0 maps to spin
//! `+1` and bit 1 to `-1`. The cost operator is `H_c = -Σ_e Π_{v∈e} Z_v`
//! (times the clause sign for signed instances), so its diagonal entry at a
//! basis state equals the classical energy of the matching spin
//! configuration, and maximizing `⟨H_c⟩` maximizes satisfied odd-parity
//! clauses. One layer applies `exp(-iγ H_c)` and then `exp(-iβ X)` on every
//! qubit.

mod bell;
mod cost;
mod evolve;
mod lightcone;
mod measure;
mod params;
mod state;

pub use bell::{
    bell_experiment, bell_state, exact_chsh, exact_correlators, optimal_angles, BellAngles,
    BellBaseline, BellReport,
};
pub use cost::{build_cost_diagonal, build_cost_diagonal_with_cap, CostDiagonal};
pub use evolve::{energy_expectation, evolve, z_product_expectation};
pub use lightcone::{edge_lightcone, lightcone_edge_expectation, Lightcone};
pub use measure::{marginal_mass, sample_conditional, sample_marginal, sample_output};
pub use params::{InitialState, QaoaParams};
pub use state::Statevector;

/// Default largest qubit count simulated densely.
pub const DEFAULT_DENSE_CAP: usize = 24;
