use alloc::vec::Vec;

use super::graph::{Clauses, Hypergraph, SignedInstance};
use super::spin::SpinConfig;
use crate::{Error, Result};

/// Largest `n` accepted by [`brute_force_max`].
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

fn hamiltonian<C: Clauses + ?Sized>(clauses: &C, sigma: &SpinConfig) -> Result<i64> {
    check_len(clauses.vertex_count(), sigma.len())?;
    let s = sigma.values();
    Ok((0..clauses.clause_count())
        .map(|i| {
            let prod: i64 = clauses.clause(i).iter().map(|&v| s[v] as i64).product();
            -(clauses.clause_sign(i) as i64) * prod
        })
        .sum())
}

/// `H^G(σ) = -Σ_e Π_{v∈e} σ_v`.
pub fn energy(graph: &Hypergraph, sigma: &SpinConfig) -> Result<i64> {
    hamiltonian(graph, sigma)
}

/// `H(σ) = -Σ_e Π_j p_ej σ_{v_ej}`.
pub fn signed_energy(instance: &SignedInstance, sigma: &SpinConfig) -> Result<i64> {
    check_len(instance.graph().n(), sigma.len())?;
    let s = sigma.values();
    Ok(instance
        .graph()
        .edges()
        .zip(instance.sign_rows())
        .map(|(edge, signs)| {
            let prod: i64 = edge
                .iter()
                .zip(signs)
                .map(|(&v, &p)| (p * s[v]) as i64)
                .product();
            -prod
        })
        .sum())
}

/// Number of satisfied XOR clauses under the odd-parity convention.
///
/// An unsigned clause is satisfied when the XOR of its variables is 1. A
/// `-1` sign on a position negates that literal. With `σ_v = (-1)^{x_v}`
/// this gives `H(σ(x)) = 2·val(x) - m` exactly.
pub fn xor_value<C: Clauses + ?Sized>(clauses: &C, x: &[u8]) -> Result<u64> {
    check_len(clauses.vertex_count(), x.len())?;
    if x.iter().any(|&b| b > 1) {
        return Err(Error::InvalidParameter(
            "boolean assignment entries must be 0 or 1",
        ));
    }
    Ok((0..clauses.clause_count())
        .filter(|&i| {
            let parity = clauses.clause(i).iter().fold(0u8, |acc, &v| acc ^ x[v]);
            let negated = u8::from(clauses.clause_sign(i) < 0);
            parity ^ negated == 1
        })
        .count() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceMax {
    pub optimum: i64,
    /// The maximizer with the smallest basis index.
    pub argmax: SpinConfig,
    pub count: u64,
}

pub fn brute_force_max<C: Clauses + ?Sized>(clauses: &C) -> Result<BruteForceMax> {
    brute_force_max_with_cap(clauses, DEFAULT_ENUMERATION_CAP)
}

/// Exhaustive maximization over all `2^n` configurations, walking them in
/// Gray-code order so each step flips a single spin.
pub fn brute_force_max_with_cap<C: Clauses + ?Sized>(
    clauses: &C,
    cap: usize,
) -> Result<BruteForceMax> {
    let n = clauses.vertex_count();
    if n > cap.min(63) {
        return Err(Error::CapExceeded {
            what: "enumeration",
            size: n,
            cap: cap.min(63),
        });
    }
    let m = clauses.clause_count();
    // Clause terms at the all-up configuration.
    let mut terms: Vec<i64> = (0..m).map(|i| -(clauses.clause_sign(i) as i64)).collect();
    let mut flips: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for i in 0..m {
        let mask = clauses.parity_mask(i);
        for (v, list) in flips.iter_mut().enumerate() {
            if mask >> v & 1 == 1 {
                list.push(i);
            }
        }
    }

    let mut h: i64 = terms.iter().sum();
    let mut best = h;
    let mut best_index = 0u64;
    let mut count = 1u64;
    let mut gray = 0u64;
    for step in 1..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        gray ^= 1 << v;
        for &c in &flips[v] {
            h -= 2 * terms[c];
            terms[c] = -terms[c];
        }
        if h > best {
            best = h;
            best_index = gray;
            count = 1;
        } else if h == best {
            count += 1;
            best_index = best_index.min(gray);
        }
    }
    Ok(BruteForceMax {
        optimum: best,
        argmax: SpinConfig::from_basis_index(n, best_index),
        count,
    })
}
