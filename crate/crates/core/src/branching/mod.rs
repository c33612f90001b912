//! Galton–Watson model of neighborhood growth in sparse hypergraphs.
//!
//! Exploring a ball generation by generation, a vertex sees `Poisson(d)`
//! new edges, each bringing `k - 1` new vertices, so generation sizes follow
//! the scaled process with offspring `(k-1)·Poisson(d)`. The dominating
//! process with `Poisson(d(k-1))` offspring has the same mean and a simpler
//! generating function; the tail bound `Pr[Z_x >= u (m / ln 2)^x] <= e^{1-u}`
//! with `m = d(k-1)` is checked against it.

mod nbhd;
mod process;

pub use nbhd::{neighborhood_stats, NeighborhoodStats};
pub use process::{
    exact_mgf, mgf_check, poisson_tail, simulate_branching, tail_check, BranchingMode,
    BranchingRun, MgfCheck, TailCheck, DEFAULT_POPULATION_CAP,
};
