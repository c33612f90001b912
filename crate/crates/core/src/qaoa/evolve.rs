use super::cost::CostDiagonal;
use super::params::{InitialState, QaoaParams};
use super::state::Statevector;
use crate::{Error, Result};

const LAYER_NORM_TOLERANCE: f64 = 1e-10;

/// `U(β, γ)|ψ0⟩` with layer `j` applying `exp(-iγ_j H_c)` then
/// `exp(-iβ_j Σ X)`.
pub fn evolve(
    params: &QaoaParams,
    initial: InitialState,
    diag: &CostDiagonal,
) -> Result<Statevector> {
    let mut state = Statevector::initial(diag.qubits(), initial);
    for (&beta, &gamma) in params.beta().iter().zip(params.gamma()) {
        state.apply_diagonal_phase(diag.values(), gamma);
        state.apply_mixer(beta);
        state.check_finite()?;
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > LAYER_NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
    }
    Ok(state)
}

/// `Σ_b |a_b|² diag_b`, summed in index order.
pub fn energy_expectation(state: &Statevector, diag: &CostDiagonal) -> Result<f64> {
    if state.qubits() != diag.qubits() {
        return Err(Error::LengthMismatch {
            expected: diag.qubits(),
            actual: state.qubits(),
        });
    }
    Ok(state
        .amplitudes()
        .iter()
        .zip(diag.values())
        .map(|(a, h)| a.norm_sqr() * h)
        .sum())
}

/// `⟨Π_{v∈mask} Z_v⟩`.
pub fn z_product_expectation(state: &Statevector, mask: u64) -> f64 {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(b, a)| {
            let p = a.norm_sqr();
            if (b as u64 & mask).count_ones().is_multiple_of(2) {
                p
            } else {
                -p
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Hypergraph;
    use crate::qaoa::build_cost_diagonal;
    use alloc::vec;

    fn two_edge_graph() -> Hypergraph {
        Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn zero_angles_are_identity() {
        let diag = build_cost_diagonal(&two_edge_graph()).unwrap();
        let params = QaoaParams::new(vec![0.0, 0.0], vec![0.0, 0.0]).unwrap();
        for init in [InitialState::Plus, InitialState::Zero] {
            let out = evolve(&params, init, &diag).unwrap();
            assert_eq!(out, Statevector::initial(3, init));
        }
    }

    #[test]
    fn mixer_fixes_plus_state() {
        let diag = build_cost_diagonal(&two_edge_graph()).unwrap();
        let params = QaoaParams::new(vec![0.37, -1.1], vec![0.0, 0.0]).unwrap();
        let out = evolve(&params, InitialState::Plus, &diag).unwrap();
        // Global phase exp(-iβ n) per layer.
        let phase = out.amplitudes()[0] / Statevector::plus(3).amplitudes()[0];
        assert!((phase.norm() - 1.0).abs() < 1e-12);
        for a in out.amplitudes() {
            assert!((a / phase - Statevector::plus(3).amplitudes()[0]).norm() < 1e-12);
        }
    }

    #[test]
    fn expectation_of_plus_and_basis_states() {
        let diag = build_cost_diagonal(&two_edge_graph()).unwrap();
        assert!(
            energy_expectation(&Statevector::plus(3), &diag)
                .unwrap()
                .abs()
                < 1e-15
        );
        for b in 0..8 {
            let e = energy_expectation(&Statevector::basis(3, b), &diag).unwrap();
            assert_eq!(e, diag.values()[b]);
        }
        assert!(energy_expectation(&Statevector::plus(2), &diag).is_err());
    }
}
