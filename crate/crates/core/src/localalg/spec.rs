use crate::qaoa::{InitialState, QaoaParams, DEFAULT_DENSE_CAP};
use crate::{Error, Result};

/// Radius-`p` decision rule over uniform vertex labels.
///
/// Both rules only look at the ball's vertex labels as a set and at its edge
/// count, so they give the same answer on rooted-isomorphic balls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorRule {
    /// `σ_v = +1` iff the mean label over `B(v, p)` is at least `threshold`.
    Threshold { threshold: f64 },
    /// `σ_v = (-1)^s` with `s` the number of ball labels at or above `cut`
    /// plus the number of ball edges.
    Parity { cut: f64 },
}

impl FactorRule {
    pub fn decide(&self, ball_vertices: &[usize], ball_edges: usize, labels: &[f64]) -> i8 {
        self.decide_iter(ball_vertices.iter().copied(), ball_edges, labels)
    }

    pub(crate) fn decide_iter<I: Iterator<Item = usize>>(
        &self,
        vertices: I,
        ball_edges: usize,
        labels: &[f64],
    ) -> i8 {
        let up = match *self {
            FactorRule::Threshold { threshold } => {
                let (mut sum, mut count) = (0.0, 0usize);
                for w in vertices {
                    sum += labels[w];
                    count += 1;
                }
                sum / count as f64 >= threshold
            }
            FactorRule::Parity { cut } => {
                let high = vertices.filter(|&w| labels[w] >= cut).count();
                (high + ball_edges).is_multiple_of(2)
            }
        };
        if up {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmKind {
    Factor(FactorRule),
    Qaoa {
        params: QaoaParams,
        initial: InitialState,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalAlgorithmSpec {
    radius: usize,
    kind: AlgorithmKind,
    dense_cap: usize,
}

impl LocalAlgorithmSpec {
    pub fn threshold(radius: usize, threshold: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::InvalidParameter("threshold must lie in [0, 1]"));
        }
        Ok(Self::factor(radius, FactorRule::Threshold { threshold }))
    }

    pub fn parity(radius: usize, cut: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&cut) {
            return Err(Error::InvalidParameter("parity cut must lie in [0, 1]"));
        }
        Ok(Self::factor(radius, FactorRule::Parity { cut }))
    }

    fn factor(radius: usize, rule: FactorRule) -> Self {
        Self {
            radius,
            kind: AlgorithmKind::Factor(rule),
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }

    /// QAOA of depth `params.depth()`, which is also its radius.
    pub fn qaoa(params: QaoaParams, initial: InitialState) -> Self {
        Self {
            radius: params.depth(),
            kind: AlgorithmKind::Qaoa { params, initial },
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }

    pub fn with_dense_cap(mut self, cap: usize) -> Self {
        self.dense_cap = cap;
        self
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn kind(&self) -> &AlgorithmKind {
        &self.kind
    }

    pub fn dense_cap(&self) -> usize {
        self.dense_cap
    }

    pub fn is_quantum(&self) -> bool {
        matches!(self.kind, AlgorithmKind::Qaoa { .. })
    }
}
