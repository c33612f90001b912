//! Concentration bounds for functions of independent variables.
//!
//! Three layers: closed-form bounds (the biased-distribution McDiarmid
//! inequality, the martingale bound it is derived from, and the classical
//! McDiarmid baseline), an exact Doob martingale enumerator for small finite
//! product spaces, and a Monte Carlo tail estimator to hold the closed forms
//! against.

mod bounds;
mod doob;
mod tail;

pub use bounds::{biased_mcdiarmid_bound, fan_bound, standard_mcdiarmid_bound, BiasedBoundParams};
pub use doob::{
    doob_enumerate, DoobTable, FiniteDist, FunctionTable, MartingaleTrace, DEFAULT_TABLE_CAP,
};
pub use tail::{empirical_tail, TailEstimate, MAIN_LANE, MIN_TAIL_TRIALS, PILOT_LANE};
