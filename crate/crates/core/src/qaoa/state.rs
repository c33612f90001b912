use alloc::vec::Vec;
use num_complex::Complex64;

use super::params::InitialState;
use crate::{Error, Result};

/// `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    pub fn zero(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = alloc::vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { n, amps }
    }

    pub fn plus(n: usize) -> Self {
        let a = 1.0 / libm::sqrt((1u64 << n) as f64);
        Self {
            n,
            amps: alloc::vec![Complex64::new(a, 0.0); 1 << n],
        }
    }

    pub fn initial(n: usize, initial: InitialState) -> Self {
        match initial {
            InitialState::Plus => Self::plus(n),
            InitialState::Zero => Self::zero(n),
        }
    }

    /// Wraps raw amplitudes; the squared norm must be within `1e-10` of one.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                actual: amps.len(),
            });
        }
        let state = Self { n, amps };
        state.check_finite()?;
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        if self
            .amps
            .iter()
            .all(|a| a.re.is_finite() && a.im.is_finite())
        {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Multiplies amplitude `b` by `exp(-i·angle·diag[b])`.
    pub fn apply_diagonal_phase(&mut self, diag: &[f64], angle: f64) {
        for (a, &h) in self.amps.iter_mut().zip(diag) {
            let (s, c) = libm::sincos(-angle * h);
            *a *= Complex64::new(c, s);
        }
    }

    /// Applies the 2×2 matrix `[[m00, m01], [m10, m11]]` to qubit `q`.
    pub fn apply_single(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let a0 = self.amps[i];
                let a1 = self.amps[i | bit];
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// Applies `m` to `target` on the branch where `control` is 1.
    pub fn apply_controlled(&mut self, control: usize, target: usize, m: [[Complex64; 2]; 2]) {
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cbit != 0 && i & tbit == 0 {
                let a0 = self.amps[i];
                let a1 = self.amps[i | tbit];
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | tbit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// `exp(-iβX)` on every qubit.
    pub fn apply_mixer(&mut self, beta: f64) {
        let m = rx(beta);
        for q in 0..self.n {
            self.apply_single(q, m);
        }
    }
}

/// `exp(-iβX) = [[cos β, -i sin β], [-i sin β, cos β]]`.
pub(crate) fn rx(beta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = libm::sincos(beta);
    let c = Complex64::new(c, 0.0);
    let ms = Complex64::new(0.0, -s);
    [[c, ms], [ms, c]]
}

/// `Ry(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`.
pub(crate) fn ry(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = libm::sincos(theta / 2.0);
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub(crate) fn hadamard() -> [[Complex64; 2]; 2] {
    let h = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub(crate) fn pauli_x() -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    [[o, l], [l, o]]
}
