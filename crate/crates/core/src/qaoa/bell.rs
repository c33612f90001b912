//! Bell experiment embedded in a four-vertex interference graph.
//!
//! Qubits are `a_c = 0`, `a_e = 1`, `b_e = 2`, `b_c = 3`. The controls `a_c`
//! and `b_c` start in `|+⟩` and act as uniformly random measurement
//! settings; `a_e` and `b_e` share a Bell pair and each receives a
//! controlled `Ry` rotation from its control. `b_e` (the vertex carrying
//! the self-loop in the interference graph) additionally gets a fixed
//! `Ry(bob_offset)` right after the pair is created. Without that offset
//! both parties measure `Z` under setting 0 and CHSH tops out at 2.5.

use core::f64::consts::PI;
use rand_core::RngCore;

use super::measure::sample_output;
use super::state::{hadamard, pauli_x, ry, Statevector};
use crate::rng::uniform;
use crate::{Error, Result};

const A_C: usize = 0;
const A_E: usize = 1;
const B_E: usize = 2;
const B_C: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BellAngles {
    /// Rotation applied to `a_e` when `a_c = 1`.
    pub alice: f64,
    /// Rotation applied to `b_e` when `b_c = 1`.
    pub bob: f64,
    /// Unconditional rotation on `b_e`.
    pub bob_offset: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BellBaseline {
    #[default]
    Quantum,
    /// Factor-of-i.i.d. rule on the same graph: a shared hidden label read
    /// by both measured vertices.
    LocalHiddenVariable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BellReport {
    /// `correlators[s_a][s_b] = E[σ(a_e) σ(b_e) | settings]`.
    pub correlators: [[f64; 2]; 2],
    pub counts: [[u64; 2]; 2],
    /// `E00 + E01 + E10 - E11`.
    pub chsh: f64,
    pub chsh_std_err: f64,
    /// Closed-form value for the quantum circuit.
    pub exact_chsh: Option<f64>,
}

pub fn bell_state(angles: &BellAngles) -> Statevector {
    let mut s = Statevector::zero(4);
    for q in [A_C, A_E, B_C] {
        s.apply_single(q, hadamard());
    }
    s.apply_controlled(A_E, B_E, pauli_x());
    s.apply_single(B_E, ry(angles.bob_offset));
    s.apply_controlled(A_C, A_E, ry(angles.alice));
    s.apply_controlled(B_C, B_E, ry(angles.bob));
    s
}

/// Exact correlators from the 16-outcome probability table.
pub fn exact_correlators(angles: &BellAngles) -> [[f64; 2]; 2] {
    let probs = bell_state(angles).probabilities();
    let mut sums = [[0.0; 2]; 2];
    let mut mass = [[0.0; 2]; 2];
    for (b, &p) in probs.iter().enumerate() {
        let sa = b >> A_C & 1;
        let sb = b >> B_C & 1;
        let parity = (b >> A_E & 1) ^ (b >> B_E & 1);
        mass[sa][sb] += p;
        sums[sa][sb] += if parity == 0 { p } else { -p };
    }
    let mut out = [[0.0; 2]; 2];
    for sa in 0..2 {
        for sb in 0..2 {
            out[sa][sb] = sums[sa][sb] / mass[sa][sb];
        }
    }
    out
}

fn chsh(e: &[[f64; 2]; 2]) -> f64 {
    e[0][0] + e[0][1] + e[1][0] - e[1][1]
}

pub fn exact_chsh(angles: &BellAngles) -> f64 {
    chsh(&exact_correlators(angles))
}

/// Grid search (step π/16 on each angle) for the settings maximizing the
/// exact CHSH value.
pub fn optimal_angles() -> (BellAngles, f64) {
    let steps = 32;
    let angle = |i: usize| -PI + 2.0 * PI * i as f64 / steps as f64;
    let mut best = (BellAngles::default(), f64::NEG_INFINITY);
    for i in 0..steps {
        for j in 0..steps {
            for l in 0..steps {
                let a = BellAngles {
                    alice: angle(i),
                    bob: angle(j),
                    bob_offset: angle(l),
                };
                let s = exact_chsh(&a);
                if s > best.1 + 1e-12 {
                    best = (a, s);
                }
            }
        }
    }
    best
}

/// Effective measurement direction, in the x–z plane, of each party's
/// setting.
fn directions(angles: &BellAngles) -> ([f64; 2], [f64; 2]) {
    (
        [0.0, -angles.alice],
        [-angles.bob_offset, -angles.bob_offset - angles.bob],
    )
}

fn lhv_shot<R: RngCore + ?Sized>(angles: &BellAngles, rng: &mut R) -> (usize, usize, i8) {
    // Labels in vertex order a_c, a_e, b_e, b_c.
    let labels = [uniform(rng), uniform(rng), uniform(rng), uniform(rng)];
    let sa = usize::from(labels[A_C] >= 0.5);
    let sb = usize::from(labels[B_C] >= 0.5);
    let hidden = 2.0 * PI * labels[A_E];
    let (da, db) = directions(angles);
    let out = |dir: f64| {
        if libm::cos(hidden - dir) >= 0.0 {
            1i8
        } else {
            -1
        }
    };
    (sa, sb, out(da[sa]) * out(db[sb]))
}

pub fn bell_experiment<R: RngCore + ?Sized>(
    angles: &BellAngles,
    shots: u64,
    baseline: BellBaseline,
    rng: &mut R,
) -> Result<BellReport> {
    if shots == 0 {
        return Err(Error::InvalidParameter(
            "bell experiment needs at least one shot",
        ));
    }
    let mut counts = [[0u64; 2]; 2];
    let mut sums = [[0i64; 2]; 2];
    let state = bell_state(angles);
    for _ in 0..shots {
        let (sa, sb, prod) = match baseline {
            BellBaseline::Quantum => {
                let out = sample_output(&state, rng)?;
                let sa = usize::from(out.get(A_C) < 0);
                let sb = usize::from(out.get(B_C) < 0);
                (sa, sb, out.get(A_E) * out.get(B_E))
            }
            BellBaseline::LocalHiddenVariable => lhv_shot(angles, rng),
        };
        counts[sa][sb] += 1;
        sums[sa][sb] += prod as i64;
    }
    let mut correlators = [[0.0; 2]; 2];
    let mut var = 0.0;
    for sa in 0..2 {
        for sb in 0..2 {
            let c = counts[sa][sb];
            if c > 0 {
                let e = sums[sa][sb] as f64 / c as f64;
                correlators[sa][sb] = e;
                var += (1.0 - e * e).max(1.0 / c as f64) / c as f64;
            } else {
                var += 1.0;
            }
        }
    }
    Ok(BellReport {
        correlators,
        counts,
        chsh: chsh(&correlators),
        chsh_std_err: libm::sqrt(var),
        exact_chsh: match baseline {
            BellBaseline::Quantum => Some(exact_chsh(angles)),
            BellBaseline::LocalHiddenVariable => None,
        },
    })
}
