//! Random sparse hypergraph instances and their Hamiltonians.
//!
//! A [`Hypergraph`] is an ordered multiset of ordered `k`-tuples over
//! `0..n`, exactly as the Poisson sampler produces them: repeated tuples
//! and repeated vertices inside a tuple are legal. The diluted spin glass
//! Hamiltonian is `H(σ) = -Σ_e Π_{v∈e} σ_v`; signed (random MAX-k-XOR)
//! instances multiply in a Rademacher sign per tuple position.

mod ball;
mod energy;
mod graph;
mod sample;
mod spin;

pub use ball::{ball, depth_budget, Ball, BallSearch, NeighborhoodIndex, Visit};
pub use energy::{
    brute_force_max, brute_force_max_with_cap, energy, signed_energy, xor_value, BruteForceMax,
    DEFAULT_ENUMERATION_CAP,
};
pub use graph::{Clauses, CoupledPair, Hypergraph, SignedInstance};
pub use sample::{sample_coupled, sample_hypergraph, sample_signs, sample_with_rate};
pub use spin::{overlap, SpinConfig};
