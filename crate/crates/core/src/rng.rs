//! Counter-based random streams.
//!
//! A [`Seed`] is 128 bits. Every consumer asks for a `(lane, stream)` pair:
//! the lane separates purposes (pilot runs, main runs, grid points) and the
//! stream is the trial index. Both end up in the ChaCha key/nonce, so
//! streams never overlap and a trial's draws do not depend on which thread
//! ran it.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed {
    pub hi: u64,
    pub lo: u64,
}

impl Seed {
    pub const fn new(hi: u64, lo: u64) -> Self {
        Self { hi, lo }
    }

    /// Stream `stream` on lane 0.
    pub fn stream(self, stream: u64) -> StreamRng {
        StreamRng::new(self, 0, stream)
    }

    pub fn lane(self, lane: u64, stream: u64) -> StreamRng {
        StreamRng::new(self, lane, stream)
    }

    /// Seed for the `index`-th independent sub-experiment, mixed with
    /// SplitMix64 so that neighbouring indices give unrelated keys.
    pub fn child(self, index: u64) -> Seed {
        let hi = splitmix64(self.hi ^ splitmix64(index));
        let lo = splitmix64(self.lo.wrapping_add(hi) ^ index.rotate_left(32));
        Seed { hi, lo }
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct StreamRng(ChaCha8Rng);

impl StreamRng {
    pub fn new(seed: Seed, lane: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.hi.to_le_bytes());
        key[8..16].copy_from_slice(&seed.lo.to_le_bytes());
        key[16..24].copy_from_slice(&lane.to_le_bytes());
        let mut inner = ChaCha8Rng::from_seed(key);
        inner.set_stream(stream);
        Self(inner)
    }
}

impl RngCore for StreamRng {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}

/// Uniform draw from `[0, 1)` with 53 bits of resolution.
pub fn uniform<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in `[0, bound)`; `bound` must be nonzero.
pub fn below<R: RngCore + ?Sized>(rng: &mut R, bound: usize) -> usize {
    debug_assert!(bound > 0);
    let bound = bound as u64;
    // Lemire's multiply-shift with rejection of the biased low zone.
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let wide = (rng.next_u64() as u128) * (bound as u128);
        if (wide as u64) >= threshold {
            return (wide >> 64) as usize;
        }
    }
}

pub fn rademacher<R: RngCore + ?Sized>(rng: &mut R) -> i8 {
    if rng.next_u32() & 1 == 0 {
        1
    } else {
        -1
    }
}

pub fn bernoulli<R: RngCore + ?Sized>(rng: &mut R, p: f64) -> bool {
    uniform(rng) < p
}

/// Rate at or above which [`poisson`] switches from inverse-CDF search to
/// transformed rejection.
pub const POISSON_INVERSION_LIMIT: f64 = 10.0;

/// Poisson sample with the given rate.
///
/// Rates below [`POISSON_INVERSION_LIMIT`] consume exactly one uniform and
/// return the smallest `m` with `F(m) >= u`. Larger rates use Hörmann's PTRS.
pub fn poisson<R: RngCore + ?Sized>(rng: &mut R, rate: f64) -> u64 {
    if rate <= 0.0 {
        return 0;
    }
    if rate < POISSON_INVERSION_LIMIT {
        poisson_inversion(uniform(rng), rate)
    } else {
        poisson_ptrs(rng, rate)
    }
}

fn poisson_inversion(u: f64, rate: f64) -> u64 {
    let mut k = 0u64;
    let mut pmf = libm::exp(-rate);
    let mut cdf = pmf;
    while cdf < u {
        k += 1;
        pmf *= rate / k as f64;
        if pmf == 0.0 {
            break;
        }
        cdf += pmf;
    }
    k
}

fn poisson_ptrs<R: RngCore + ?Sized>(rng: &mut R, rate: f64) -> u64 {
    let slam = libm::sqrt(rate);
    let loglam = libm::log(rate);
    let b = 0.931 + 2.53 * slam;
    let a = -0.059 + 0.02483 * b;
    let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    let vr = 0.9277 - 3.6224 / (b - 2.0);
    loop {
        let u = uniform(rng) - 0.5;
        let v = uniform(rng);
        let us = 0.5 - libm::fabs(u);
        let k = libm::floor((2.0 * a / us + b) * u + rate + 0.43);
        if us >= 0.07 && v <= vr {
            return k as u64;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        let lhs = libm::log(v) + libm::log(inv_alpha) - libm::log(a / (us * us) + b);
        let rhs = -rate + k * loglam - libm::lgamma(k + 1.0);
        if lhs <= rhs {
            return k as u64;
        }
    }
}
