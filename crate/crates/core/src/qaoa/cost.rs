use alloc::vec::Vec;

use super::DEFAULT_DENSE_CAP;
use crate::instances::Clauses;
use crate::{Error, Result};

/// Eigenvalues of `H_c` on the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CostDiagonal {
    n: usize,
    values: Vec<f64>,
}

impl CostDiagonal {
    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn build_cost_diagonal<C: Clauses + ?Sized>(clauses: &C) -> Result<CostDiagonal> {
    build_cost_diagonal_with_cap(clauses, DEFAULT_DENSE_CAP)
}

/// Entry `b` is `-Σ_e sign_e · (-1)^{popcount(b & mask_e)}`, where `mask_e`
/// holds the vertices occurring an odd number of times in clause `e`.
pub fn build_cost_diagonal_with_cap<C: Clauses + ?Sized>(
    clauses: &C,
    cap: usize,
) -> Result<CostDiagonal> {
    let n = clauses.vertex_count();
    let cap = cap.min(40);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "dense simulation",
            size: n,
            cap,
        });
    }
    let terms: Vec<(u64, f64)> = (0..clauses.clause_count())
        .map(|i| (clauses.parity_mask(i), -(clauses.clause_sign(i) as f64)))
        .collect();
    let values = (0..1u64 << n)
        .map(|b| {
            terms
                .iter()
                .map(|&(mask, w)| {
                    if (b & mask).count_ones() % 2 == 0 {
                        w
                    } else {
                        -w
                    }
                })
                .sum()
        })
        .collect();
    Ok(CostDiagonal { n, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Hypergraph;
    use alloc::vec;

    #[test]
    fn edgeless_is_zero() {
        let g = Hypergraph::empty(3, 2).unwrap();
        assert!(build_cost_diagonal(&g)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0.0));
    }

    #[test]
    fn single_zz_edge() {
        let g = Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(
            build_cost_diagonal(&g).unwrap().values(),
            &[-1.0, 1.0, 1.0, -1.0]
        );
    }

    #[test]
    fn cap_enforced() {
        let g = Hypergraph::empty(10, 2).unwrap();
        assert!(matches!(
            build_cost_diagonal_with_cap(&g, 8),
            Err(Error::CapExceeded { .. })
        ));
    }
}
