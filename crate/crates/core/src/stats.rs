//! Small summary statistics shared by the Monte Carlo validators.
//!
//! All reductions run sequentially over slices in index order, so a result
//! depends only on the values, never on how they were produced.

/// Two-sided 99% standard normal quantile.
pub const Z99: f64 = 2.575_829_303_548_900_4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (divisor `count - 1`).
    pub std: f64,
    pub std_err: f64,
}

impl Summary {
    pub fn ci_radius(&self) -> f64 {
        Z99 * self.std_err
    }

    pub fn ci(&self) -> (f64, f64) {
        (self.mean - self.ci_radius(), self.mean + self.ci_radius())
    }

    /// Approximate 99% interval for the standard deviation, from the
    /// normal approximation `se(s) ~ s / sqrt(2(N-1))`.
    pub fn std_ci(&self) -> (f64, f64) {
        if self.count < 2 {
            return (self.std, self.std);
        }
        let rel = Z99 / libm::sqrt(2.0 * (self.count - 1) as f64);
        (self.std * (1.0 - rel).max(0.0), self.std * (1.0 + rel))
    }
}

pub fn summarize(values: &[f64]) -> Summary {
    let count = values.len();
    if count == 0 {
        return Summary {
            count,
            mean: 0.0,
            std: 0.0,
            std_err: 0.0,
        };
    }
    let mean = values.iter().sum::<f64>() / count as f64;
    let std = if count > 1 {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        libm::sqrt(ss / (count - 1) as f64)
    } else {
        0.0
    };
    Summary {
        count,
        mean,
        std,
        std_err: std / libm::sqrt(count as f64),
    }
}

/// Binomial proportion estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Proportion {
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    /// Standard error, floored at `1/trials` so that an empty count still
    /// reports the resolution of the experiment.
    pub std_err: f64,
}

impl Proportion {
    pub fn new(hits: u64, trials: u64) -> Self {
        let estimate = if trials == 0 {
            0.0
        } else {
            hits as f64 / trials as f64
        };
        let t = trials.max(1) as f64;
        let var = (estimate * (1.0 - estimate)).max(1.0 / t);
        Self {
            hits,
            trials,
            estimate,
            std_err: libm::sqrt(var / t),
        }
    }

    pub fn ci_radius(&self) -> f64 {
        Z99 * self.std_err
    }
}

/// Linear-interpolated quantile of already sorted data.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        1 => sorted[0],
        len => {
            let pos = q.clamp(0.0, 1.0) * (len - 1) as f64;
            let lo = libm::floor(pos) as usize;
            let hi = (lo + 1).min(len - 1);
            let frac = pos - lo as f64;
            sorted[lo] + (sorted[hi] - sorted[lo]) * frac
        }
    }
}
