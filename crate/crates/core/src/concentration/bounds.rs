use crate::{Error, Result};

/// Parameters of the biased-distribution McDiarmid bound.
///
/// `p` is the probability mass off the dominant outcome `χ₀`, `c` the
/// bounded-difference constant and `eps` the deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasedBoundParams {
    n: usize,
    p: f64,
    c: f64,
    eps: f64,
}

impl BiasedBoundParams {
    pub fn new(n: usize, p: f64, c: f64, eps: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter("p must lie in [0, 1]"));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter("c must be positive and finite"));
        }
        if !(eps >= 0.0) || !eps.is_finite() {
            return Err(Error::InvalidParameter(
                "eps must be nonnegative and finite",
            ));
        }
        Ok(Self { n, p, c, eps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// `2 exp(-ε² / (2np(2-p)c² + 2cε/3))`, unclamped.
pub fn biased_mcdiarmid_bound(params: &BiasedBoundParams) -> f64 {
    let BiasedBoundParams { n, p, c, eps } = *params;
    let denom = 2.0 * n as f64 * p * (2.0 - p) * c * c + 2.0 * c * eps / 3.0;
    if denom == 0.0 {
        // p = 0 and eps = 0: the exponent is 0/0, report the vacuous bound.
        return 2.0;
    }
    2.0 * libm::exp(-eps * eps / denom)
}

/// Martingale tail bound `2 exp(-x² / (2(ν² + x/3)))` for differences
/// bounded by one and quadratic characteristic at most `ν²`. Unclamped.
pub fn fan_bound(x: f64, nu2: f64) -> Result<f64> {
    if !(x >= 0.0) || !(nu2 >= 0.0) || !x.is_finite() || !nu2.is_finite() {
        return Err(Error::InvalidParameter(
            "fan bound needs finite x >= 0 and nu2 >= 0",
        ));
    }
    let denom = 2.0 * (nu2 + x / 3.0);
    if denom == 0.0 {
        return Ok(2.0);
    }
    Ok(2.0 * libm::exp(-x * x / denom))
}

/// Classical McDiarmid bound `2 exp(-2ε² / (n c²))` for comparison.
pub fn standard_mcdiarmid_bound(n: usize, c: f64, eps: f64) -> Result<f64> {
    if n == 0 || !(c > 0.0) {
        return Err(Error::InvalidParameter(
            "standard bound needs n >= 1 and c > 0",
        ));
    }
    Ok(2.0 * libm::exp(-2.0 * eps * eps / (n as f64 * c * c)))
}
