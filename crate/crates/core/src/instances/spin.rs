use alloc::vec::Vec;

use crate::{Error, Result};

/// A ±1 assignment to every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinConfig(Vec<i8>);

impl SpinConfig {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(&s) = values.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpin(s as i64));
        }
        Ok(Self(values))
    }

    pub fn all_up(n: usize) -> Self {
        Self(alloc::vec![1; n])
    }

    /// Spin `i` is `(-1)^{bit i of index}`, the computational basis
    /// convention used by the statevector code.
    pub fn from_basis_index(n: usize, index: u64) -> Self {
        Self(
            (0..n)
                .map(|i| if index >> i & 1 == 0 { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn basis_index(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &s)| if s < 0 { acc | 1 << i } else { acc })
    }

    /// Boolean view with `-1 ↦ 1` and `+1 ↦ 0`.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        bits.iter()
            .map(|&b| match b {
                0 => Ok(1),
                1 => Ok(-1),
                _ => Err(Error::InvalidParameter(
                    "boolean assignment entries must be 0 or 1",
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.0.iter().map(|&s| u8::from(s < 0)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, v: usize) -> i8 {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, spin: i8) -> Result<()> {
        if spin != 1 && spin != -1 {
            return Err(Error::InvalidSpin(spin as i64));
        }
        self.0[v] = spin;
        Ok(())
    }

    /// Number of `-1` entries.
    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|&&s| s < 0).count()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|&s| -s).collect())
    }

    /// `Σ σ1_i σ2_i`, the unnormalized overlap.
    pub fn inner(&self, other: &SpinConfig) -> Result<i64> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| (a * b) as i64)
            .sum())
    }
}

/// `R(σ1, σ2) = (1/n) Σ σ1_i σ2_i`.
pub fn overlap(a: &SpinConfig, b: &SpinConfig) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::InvalidParameter("overlap of empty configurations"));
    }
    Ok(a.inner(b)? as f64 / a.len() as f64)
}
