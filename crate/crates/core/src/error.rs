use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid spin value {0}, expected -1 or +1")]
    InvalidSpin(i64),
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),
    #[error("conditioning event has zero probability")]
    ZeroMass,
    #[error("state has non-finite amplitudes")]
    NonFinite,
    #[error("edit changes the radius-{radius} ball around vertex {vertex}")]
    ForbiddenEdit { vertex: usize, radius: usize },
    #[error("vertices {0} and {1} are within distance 2p of each other")]
    TooClose(usize, usize),
}
