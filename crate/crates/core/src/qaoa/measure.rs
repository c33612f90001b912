use alloc::vec::Vec;
use rand_core::RngCore;

use super::state::Statevector;
use crate::instances::SpinConfig;
use crate::rng::uniform;
use crate::{Error, Result};

/// `(mask, value)` bit pattern selecting the basis states consistent with
/// the fixed spins.
fn pattern(n: usize, fixed: &[(usize, i8)]) -> Result<(usize, usize)> {
    let mut mask = 0usize;
    let mut value = 0usize;
    for &(q, spin) in fixed {
        if q >= n {
            return Err(Error::VertexOutOfRange { vertex: q, n });
        }
        let bit = match spin {
            1 => 0,
            -1 => 1,
            other => return Err(Error::InvalidSpin(other as i64)),
        };
        if mask >> q & 1 == 1 && value >> q & 1 != bit {
            // Contradictory constraints select nothing.
            return Ok((usize::MAX, 0));
        }
        mask |= 1 << q;
        value |= bit << q;
    }
    Ok((mask, value))
}

/// Probability that measuring every qubit yields spins agreeing with
/// `fixed`.
pub fn marginal_mass(state: &Statevector, fixed: &[(usize, i8)]) -> Result<f64> {
    let (mask, value) = pattern(state.qubits(), fixed)?;
    if mask == usize::MAX {
        return Ok(0.0);
    }
    Ok(state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(b, _)| b & mask == value)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// Born-rule sample of all qubits.
pub fn sample_output<R: RngCore + ?Sized>(state: &Statevector, rng: &mut R) -> Result<SpinConfig> {
    sample_conditional(state, &[], rng)
}

/// Born-rule sample conditioned on the spins in `fixed`.
///
/// Qubits are measured one at a time from the highest index down, each
/// outcome drawn from its conditional probability given the earlier ones
/// and the constraint. Fails with [`Error::ZeroMass`] if the constraint has
/// probability zero.
pub fn sample_conditional<R: RngCore + ?Sized>(
    state: &Statevector,
    fixed: &[(usize, i8)],
    rng: &mut R,
) -> Result<SpinConfig> {
    let n = state.qubits();
    let (mask, value) = pattern(n, fixed)?;
    if mask == usize::MAX {
        return Err(Error::ZeroMass);
    }
    let probs: Vec<f64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(b, a)| if b & mask == value { a.norm_sqr() } else { 0.0 })
        .collect();
    let total: f64 = probs.iter().sum();
    if !(total > 0.0) {
        return Err(Error::ZeroMass);
    }
    let mut lo = 0usize;
    for q in (0..n).rev() {
        let half = 1usize << q;
        let low: f64 = probs[lo..lo + half].iter().sum();
        let high: f64 = probs[lo + half..lo + 2 * half].iter().sum();
        let take_high = if high == 0.0 {
            false
        } else if low == 0.0 {
            true
        } else {
            uniform(rng) * (low + high) >= low
        };
        if take_high {
            lo += half;
        }
    }
    Ok(SpinConfig::from_basis_index(n, lo as u64))
}

/// Joint sample of the listed qubits only, measured in the given order.
pub fn sample_marginal<R: RngCore + ?Sized>(
    state: &Statevector,
    qubits: &[usize],
    rng: &mut R,
) -> Result<Vec<(usize, i8)>> {
    let mut fixed: Vec<(usize, i8)> = Vec::with_capacity(qubits.len());
    for &q in qubits {
        fixed.push((q, 1));
        let up = marginal_mass(state, &fixed)?;
        fixed.pop();
        fixed.push((q, -1));
        let down = marginal_mass(state, &fixed)?;
        fixed.pop();
        if !(up + down > 0.0) {
            return Err(Error::ZeroMass);
        }
        let spin = if down == 0.0 || (up > 0.0 && uniform(rng) * (up + down) < up) {
            1
        } else {
            -1
        };
        fixed.push((q, spin));
    }
    Ok(fixed)
}
