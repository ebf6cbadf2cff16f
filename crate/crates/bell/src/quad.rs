//! Admissible quadruples and the correlation operator they generate.
//!
//! A quadruple holds two dichotomic-observable candidates per side on a
//! common space. Admissibility (Hermitian, norm at most one, cross-side
//! commutation) is report-based: `validate` never fails, it measures. The
//! correlation operator is only assembled from quadruples that pass.

use thiserror::Error;

use oplab_alg::states::{State, StateError};
use oplab_core::mat::{comm, CMatrix, MatError};
use oplab_core::tol;

#[derive(Debug, Error)]
pub enum BellError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("quadruple fails admissibility")]
    InvalidQuadruple { report: QuadrupleReport },
    #[error("operands live on different spaces: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("weights must be nonnegative and sum to one: {reason}")]
    BadWeights { reason: String },
    #[error("projections commute (commutator norm {commutator_norm:.3e}); the construction degenerates")]
    CommutingProjections { commutator_norm: f64 },
}

/// Two observable candidates per side on one ambient space. Order of the
/// residual arrays everywhere: a1, a2, b1, b2.
#[derive(Debug, Clone)]
pub struct AdmissibleQuadruple {
    pub a1: CMatrix,
    pub a2: CMatrix,
    pub b1: CMatrix,
    pub b2: CMatrix,
}

impl AdmissibleQuadruple {
    pub fn new(
        a1: CMatrix,
        a2: CMatrix,
        b1: CMatrix,
        b2: CMatrix,
    ) -> Result<Self, BellError> {
        let n = a1.dim();
        for m in [&a2, &b1, &b2] {
            if m.dim() != n {
                return Err(BellError::DimMismatch { left: m.dim(), right: n });
            }
        }
        Ok(AdmissibleQuadruple { a1, a2, b1, b2 })
    }

    pub fn dim(&self) -> usize {
        self.a1.dim()
    }

    fn entries(&self) -> [&CMatrix; 4] {
        [&self.a1, &self.a2, &self.b1, &self.b2]
    }
}

/// Measured admissibility defects, and the verdict.
#[derive(Debug, Clone)]
pub struct QuadrupleReport {
    /// `|x - x*|` per entry.
    pub hermiticity: [f64; 4],
    /// Operator norm per entry; admissible up to `1 + QUAD_NORM_SLACK`.
    pub norms: [f64; 4],
    /// `|[a_i, b_j]|` in the order (1,1), (1,2), (2,1), (2,2).
    pub commutation: [f64; 4],
    pub pass: bool,
}

pub fn validate(q: &AdmissibleQuadruple) -> QuadrupleReport {
    let entries = q.entries();
    let mut hermiticity = [0.0; 4];
    let mut norms = [0.0; 4];
    for (k, m) in entries.iter().enumerate() {
        hermiticity[k] = (&m.adj() - m).op_norm();
        norms[k] = m.op_norm();
    }
    let commutation = [
        comm(&q.a1, &q.b1).op_norm(),
        comm(&q.a1, &q.b2).op_norm(),
        comm(&q.a2, &q.b1).op_norm(),
        comm(&q.a2, &q.b2).op_norm(),
    ];
    let pass = hermiticity.iter().all(|&h| h <= tol::QUAD_HERM_ABS)
        && norms.iter().all(|&n| n <= 1.0 + tol::QUAD_NORM_SLACK)
        && commutation.iter().all(|&c| c <= tol::QUAD_COMM_ABS);
    QuadrupleReport { hermiticity, norms, commutation, pass }
}

/// The correlation operator `a1(b1 + b2) + a2(b1 - b2)` together with its
/// source quadruple.
#[derive(Debug, Clone)]
pub struct BellOperator {
    matrix: CMatrix,
    source: AdmissibleQuadruple,
}

impl BellOperator {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &AdmissibleQuadruple {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

pub fn bell_operator(q: &AdmissibleQuadruple) -> Result<BellOperator, BellError> {
    let report = validate(q);
    if !report.pass {
        return Err(BellError::InvalidQuadruple { report });
    }
    let sum = &q.b1 + &q.b2;
    let diff = &q.b1 - &q.b2;
    let matrix = &(&q.a1 * &sum) + &(&q.a2 * &diff);
    Ok(BellOperator { matrix, source: q.clone() })
}

/// Expectation of the correlation operator in a state. Real up to
/// rounding, since the operator is Hermitian within the commutation slack.
pub fn chsh_value(s: &State, bo: &BellOperator) -> Result<f64, BellError> {
    if s.dim() != bo.dim() {
        return Err(BellError::DimMismatch { left: s.dim(), right: bo.dim() });
    }
    Ok(s.eval(bo.matrix())?.re)
}

// sign assignment k in 0..16, bit layout (a1 a2 b1 b2) from the high bit
fn assignment(k: usize) -> (f64, f64, f64, f64) {
    let sign = |bit: usize| if k >> bit & 1 == 1 { 1.0 } else { -1.0 };
    (sign(3), sign(2), sign(1), sign(0))
}

fn assignment_value(k: usize) -> f64 {
    let (a1, a2, b1, b2) = assignment(k);
    a1 * (b1 + b2) + a2 * (b1 - b2)
}

/// Exact range of the correlation form over the 16 deterministic sign
/// assignments: always `(2, -2)`.
pub fn classical_bound() -> (f64, f64) {
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for k in 0..16 {
        let v = assignment_value(k);
        max = max.max(v);
        min = min.min(v);
    }
    (max, min)
}

/// Value of a probabilistic mixture of the 16 deterministic assignments,
/// indexed by the bit layout of `assignment`. Always lands in `[-2, 2]`.
pub fn classical_mixture(weights: &[f64]) -> Result<f64, BellError> {
    if weights.len() != 16 {
        return Err(BellError::BadWeights {
            reason: format!("expected 16 weights, got {}", weights.len()),
        });
    }
    let mut total = 0.0;
    for &w in weights {
        if !w.is_finite() || w < 0.0 {
            return Err(BellError::BadWeights { reason: format!("weight {w} out of range") });
        }
        total += w;
    }
    if (total - 1.0).abs() > tol::WEIGHT_SUM_ABS {
        return Err(BellError::BadWeights { reason: format!("weights sum to {total}") });
    }
    Ok(weights
        .iter()
        .enumerate()
        .map(|(k, &w)| w * assignment_value(k))
        .sum())
}
