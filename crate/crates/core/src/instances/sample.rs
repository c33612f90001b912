use alloc::vec::Vec;
use rand_core::RngCore;

use super::graph::{CoupledPair, Hypergraph, SignedInstance};
use crate::rng::{below, poisson, rademacher};
use crate::{Error, Result};

/// Draws `Poisson(rate)` edges, each an i.i.d. uniform tuple from `[n]^k`.
///
/// The edge count is drawn first, then the tuples in order, vertex by
/// vertex. `rate = 0` always yields the empty graph.
pub fn sample_with_rate<R: RngCore + ?Sized>(
    n: usize,
    k: usize,
    rate: f64,
    rng: &mut R,
) -> Result<Hypergraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1"));
    }
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2"));
    }
    if !(rate >= 0.0) || !rate.is_finite() {
        return Err(Error::InvalidParameter(
            "edge rate must be finite and nonnegative",
        ));
    }
    let m = poisson(rng, rate) as usize;
    let flat: Vec<usize> = (0..m * k).map(|_| below(rng, n)).collect();
    Hypergraph::from_flat(n, k, flat)
}

/// `G ~ H(n, d, k)`: `Poisson(dn/k)` uniform tuples from `[n]^k`.
pub fn sample_hypergraph<R: RngCore + ?Sized>(
    n: usize,
    d: f64,
    k: usize,
    rng: &mut R,
) -> Result<Hypergraph> {
    if !(d > 0.0) {
        return Err(Error::InvalidParameter("average degree d must be positive"));
    }
    sample_with_rate(n, k, d * n as f64 / k as f64, rng)
}

/// Coupled interpolation at `t`: a shared `Poisson(t·dn/k)` edge set plus
/// two independent private `Poisson((1-t)·dn/k)` sets.
pub fn sample_coupled<R: RngCore + ?Sized>(
    n: usize,
    d: f64,
    k: usize,
    t: f64,
    rng: &mut R,
) -> Result<CoupledPair> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(
            "coupling parameter t must lie in [0, 1]",
        ));
    }
    if !(d > 0.0) {
        return Err(Error::InvalidParameter("average degree d must be positive"));
    }
    let rate = d * n as f64 / k as f64;
    let shared = sample_with_rate(n, k, t * rate, rng)?;
    let private1 = sample_with_rate(n, k, (1.0 - t) * rate, rng)?;
    let private2 = sample_with_rate(n, k, (1.0 - t) * rate, rng)?;
    CoupledPair::new(t, shared, private1, private2)
}

/// Independent Rademacher sign for every tuple position.
pub fn sample_signs<R: RngCore + ?Sized>(graph: &Hypergraph, rng: &mut R) -> SignedInstance {
    let signs: Vec<i8> = (0..graph.edge_count() * graph.k())
        .map(|_| rademacher(rng))
        .collect();
    SignedInstance::from_flat(graph.clone(), signs).expect("sign table matches edge table")
}
