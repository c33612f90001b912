use alloc::vec::Vec;

use crate::{Error, Result};

/// Angle vectors of a depth-`p` circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams {
    beta: Vec<f64>,
    gamma: Vec<f64>,
}

impl QaoaParams {
    pub fn new(beta: Vec<f64>, gamma: Vec<f64>) -> Result<Self> {
        if beta.len() != gamma.len() {
            return Err(Error::LengthMismatch {
                expected: beta.len(),
                actual: gamma.len(),
            });
        }
        if beta.iter().chain(&gamma).any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter("QAOA angles must be finite"));
        }
        Ok(Self { beta, gamma })
    }

    pub fn depth(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }
}

/// Symmetric product input states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialState {
    #[default]
    Plus,
    Zero,
}
