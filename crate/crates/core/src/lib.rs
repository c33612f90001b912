//! Sparse random hypergraph spin glasses and the machinery to probe local
//! algorithms on them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! filesystem, threads, or the command line lives in the `ogp-lab` companion
//! crate; parallel Monte Carlo is injected through [`runner::TrialRunner`].
//!
//! Module map:
//!
//! - [`instances`]: hypergraph instances, Hamiltonians, XOR values, balls,
//!   the coupled interpolation and exact enumeration.
//! - [`concentration`]: closed-form tail bounds, an exact Doob martingale
//!   enumerator and Monte Carlo tail validators.
//! - [`localalg`]: factor-of-i.i.d. rules, QAOA as a local algorithm,
//!   coupled runs with shared randomness, overlap curves and locality audits.
//! - [`qaoa`]: dense and lightcone QAOA simulation, Born-rule sampling and
//!   the Bell experiment.
//! - [`branching`]: Galton–Watson neighborhood growth and its tail bounds.
#![no_std]
#![deny(missing_debug_implementations)]
// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod branching;
pub mod concentration;
mod error;
pub mod instances;
pub mod localalg;
pub mod qaoa;
pub mod rng;
pub mod runner;
pub mod stats;

pub use error::{Error, Result};
