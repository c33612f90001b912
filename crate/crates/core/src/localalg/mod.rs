//! Generic local algorithms and runs with shared randomness.
//!
//! Two families implement the contract: factor-of-i.i.d. rules, which draw
//! one uniform label per vertex and decide `σ_v` from the labels inside the
//! radius-`p` ball, and fixed-angle QAOA of depth `p`, sampled exactly from
//! the dense statevector.
//!
//! [`coupled_runs`] realizes the shared-randomness protocol on a coupled
//! pair: vertices whose balls only use shared edges form `L⁺`, a random
//! `t⁺` fraction `L` of them gets common labels, and each graph's output is
//! drawn conditioned on agreeing there.

mod audit;
mod coupled;
mod curve;
mod rules;
mod spec;

pub use audit::{
    independence_audit, locality_audit, marginal_audit, AuditReport, AuditRequest, GraphEdit,
    IndependenceAudit, MarginalAudit, EXACT_AUDIT_TOLERANCE,
};
pub use coupled::{compute_lplus, coupled_runs, CoupledRunResult};
pub use curve::{
    magnetization, overlap_curve, smoothness_screen, CurvePoint, LIPSCHITZ_SLACK,
    MAGNETIZATION_LANE,
};
pub use rules::{run, run_with_labels};
pub use spec::{AlgorithmKind, FactorRule, LocalAlgorithmSpec};
