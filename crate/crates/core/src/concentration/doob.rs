use alloc::vec::Vec;
use rand_core::RngCore;

use crate::rng::uniform;
use crate::{Error, Result};

/// Default limit on `|X|^n` for exact enumeration.
pub const DEFAULT_TABLE_CAP: usize = 2_000_000;

/// Probability table over the finite alphabet `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDist {
    probs: Vec<f64>,
    cdf: Vec<f64>,
}

impl FiniteDist {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidParameter(
                "distribution needs at least one outcome",
            ));
        }
        if probs.iter().any(|&q| !(q >= 0.0) || !q.is_finite()) {
            return Err(Error::InvalidParameter(
                "probabilities must be finite and nonnegative",
            ));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(total));
        }
        let mut acc = 0.0;
        let cdf = probs
            .iter()
            .map(|&q| {
                acc += q;
                acc
            })
            .collect();
        Ok(Self { probs, cdf })
    }

    /// Mass `1 - p` on `chi0`, the remaining `p` spread evenly over the
    /// other `size - 1` outcomes.
    pub fn biased(size: usize, p: f64, chi0: usize) -> Result<Self> {
        if chi0 >= size {
            return Err(Error::InvalidParameter(
                "dominant outcome outside the alphabet",
            ));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter("p must lie in [0, 1]"));
        }
        if size == 1 && p > 0.0 {
            return Err(Error::InvalidParameter(
                "off-dominant mass needs a second outcome",
            ));
        }
        let rest = if size > 1 { p / (size - 1) as f64 } else { 0.0 };
        let probs = (0..size)
            .map(|x| if x == chi0 { 1.0 - p } else { rest })
            .collect();
        Self::new(probs)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, x: usize) -> f64 {
        self.probs[x]
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> usize {
        let u = uniform(rng);
        self.cdf
            .iter()
            .position(|&c| u < c)
            .unwrap_or_else(|| self.probs.iter().rposition(|&q| q > 0.0).unwrap_or(0))
    }
}

/// `f: X^n → R` stored densely. The index of `(x_1, ..., x_n)` is the
/// mixed-radix number with `x_1` most significant, so every prefix owns a
/// contiguous block.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionTable {
    alphabet: usize,
    n: usize,
    values: Vec<f64>,
}

fn table_size(alphabet: usize, n: usize) -> Option<usize> {
    alphabet.checked_pow(u32::try_from(n).ok()?)
}

impl FunctionTable {
    pub fn new(alphabet: usize, n: usize, values: Vec<f64>) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidParameter("alphabet must be nonempty"));
        }
        let size = table_size(alphabet, n).ok_or(Error::CapExceeded {
            what: "function table",
            size: usize::MAX,
            cap: DEFAULT_TABLE_CAP,
        })?;
        if values.len() != size {
            return Err(Error::LengthMismatch {
                expected: size,
                actual: values.len(),
            });
        }
        Ok(Self {
            alphabet,
            n,
            values,
        })
    }

    pub fn from_fn<F: FnMut(&[usize]) -> f64>(
        alphabet: usize,
        n: usize,
        cap: usize,
        mut f: F,
    ) -> Result<Self> {
        let size = table_size(alphabet, n)
            .filter(|&s| s <= cap)
            .ok_or(Error::CapExceeded {
                what: "function table",
                size: table_size(alphabet, n).unwrap_or(usize::MAX),
                cap,
            })?;
        let mut x = alloc::vec![0usize; n];
        let mut values = Vec::with_capacity(size);
        for index in 0..size {
            decode(index, alphabet, &mut x);
            values.push(f(&x));
        }
        Self::new(alphabet, n, values)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn index_of(&self, x: &[usize]) -> usize {
        x.iter().fold(0, |acc, &xi| acc * self.alphabet + xi)
    }

    pub fn eval(&self, x: &[usize]) -> f64 {
        self.values[self.index_of(x)]
    }

    /// Smallest `c` with `|f(x) - f(x')| <= c` whenever `x, x'` differ in
    /// one coordinate.
    pub fn bounded_difference(&self) -> f64 {
        let mut c = 0.0f64;
        let mut stride = 1;
        for _ in 0..self.n {
            let block = stride * self.alphabet;
            for base in (0..self.values.len()).step_by(block) {
                for offset in 0..stride {
                    let column =
                        (0..self.alphabet).map(|a| self.values[base + offset + a * stride]);
                    let (lo, hi) = column
                        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                            (lo.min(v), hi.max(v))
                        });
                    c = c.max(hi - lo);
                }
            }
            stride = block;
        }
        c
    }
}

fn decode(mut index: usize, alphabet: usize, x: &mut [usize]) {
    for slot in x.iter_mut().rev() {
        *slot = index % alphabet;
        index /= alphabet;
    }
}

/// Doob martingale along one observed sequence.
///
/// `z[i] = E[f | X_1..X_i]` for `i = 0..=n`, `y[i-1] = Z_i - Z_{i-1}` and
/// `quadratic[i] = Σ_{j<=i} E[Y_j² | X_{<j}]` with `quadratic[0] = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MartingaleTrace {
    pub z: Vec<f64>,
    pub y: Vec<f64>,
    pub quadratic: Vec<f64>,
}

/// All conditional expectations `E[f | X_1..X_i]` for every prefix.
#[derive(Debug, Clone)]
pub struct DoobTable {
    alphabet: usize,
    n: usize,
    probs: Vec<f64>,
    /// `levels[i]` has one entry per prefix of length `i`.
    levels: Vec<Vec<f64>>,
}

impl DoobTable {
    pub fn build(f: &FunctionTable, dist: &FiniteDist, cap: usize) -> Result<Self> {
        if dist.len() != f.alphabet {
            return Err(Error::LengthMismatch {
                expected: f.alphabet,
                actual: dist.len(),
            });
        }
        if f.values.len() > cap {
            return Err(Error::CapExceeded {
                what: "function table",
                size: f.values.len(),
                cap,
            });
        }
        let a = f.alphabet;
        let mut levels: Vec<Vec<f64>> = Vec::with_capacity(f.n + 1);
        levels.push(f.values.clone());
        for _ in 0..f.n {
            let finer = levels.last().expect("nonempty");
            let coarser: Vec<f64> = finer
                .chunks_exact(a)
                .map(|block| block.iter().zip(dist.probs()).map(|(v, q)| v * q).sum())
                .collect();
            levels.push(coarser);
        }
        levels.reverse();
        Ok(Self {
            alphabet: a,
            n: f.n,
            probs: dist.probs.clone(),
            levels,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `E f`.
    pub fn mean(&self) -> f64 {
        self.levels[0][0]
    }

    /// `E[f | X_1..X_i = prefix]` where `prefix` is a mixed-radix index.
    pub fn conditional_mean(&self, i: usize, prefix: usize) -> f64 {
        self.levels[i][prefix]
    }

    /// `E[Y_i² | X_{<i} = prefix]` for `i` in `1..=n`.
    pub fn conditional_variance(&self, i: usize, prefix: usize) -> f64 {
        let before = self.levels[i - 1][prefix];
        let after = &self.levels[i][prefix * self.alphabet..(prefix + 1) * self.alphabet];
        after
            .iter()
            .zip(&self.probs)
            .map(|(v, q)| q * (v - before) * (v - before))
            .sum()
    }

    pub fn trace(&self, x: &[usize]) -> Result<MartingaleTrace> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        if x.iter().any(|&xi| xi >= self.alphabet) {
            return Err(Error::InvalidParameter("observation outside the alphabet"));
        }
        let mut z = Vec::with_capacity(self.n + 1);
        let mut y = Vec::with_capacity(self.n);
        let mut quadratic = Vec::with_capacity(self.n + 1);
        let mut prefix = 0usize;
        z.push(self.levels[0][0]);
        quadratic.push(0.0);
        for (i, &xi) in x.iter().enumerate() {
            let level = i + 1;
            let q = quadratic[i] + self.conditional_variance(level, prefix);
            prefix = prefix * self.alphabet + xi;
            let zi = self.levels[level][prefix];
            y.push(zi - z[i]);
            z.push(zi);
            quadratic.push(q);
        }
        Ok(MartingaleTrace { z, y, quadratic })
    }

    /// `max |Y_i|` over every coordinate, history and next value.
    pub fn max_abs_difference(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 1..=self.n {
            for (prefix, &before) in self.levels[i - 1].iter().enumerate() {
                let after = &self.levels[i][prefix * self.alphabet..(prefix + 1) * self.alphabet];
                for v in after {
                    worst = worst.max((v - before).abs());
                }
            }
        }
        worst
    }

    /// `max over histories X_{<i}` of `E[Y_i² | X_{<i}]`.
    pub fn max_conditional_variance(&self, i: usize) -> f64 {
        (0..self.levels[i - 1].len())
            .map(|prefix| self.conditional_variance(i, prefix))
            .fold(0.0, f64::max)
    }

    /// Largest `⟨Z⟩_n` over all paths.
    pub fn max_quadratic_characteristic(&self) -> f64 {
        let mut best: Vec<f64> = alloc::vec![0.0; self.levels[self.n].len()];
        for i in (1..=self.n).rev() {
            best = (0..self.levels[i - 1].len())
                .map(|prefix| {
                    let tail = best[prefix * self.alphabet..(prefix + 1) * self.alphabet]
                        .iter()
                        .copied()
                        .fold(0.0, f64::max);
                    self.conditional_variance(i, prefix) + tail
                })
                .collect();
        }
        best[0]
    }
}

/// Exact Doob martingale of `f` along the observed sequence `x`.
pub fn doob_enumerate(
    f: &FunctionTable,
    dist: &FiniteDist,
    x: &[usize],
) -> Result<MartingaleTrace> {
    DoobTable::build(f, dist, DEFAULT_TABLE_CAP)?.trace(x)
}
