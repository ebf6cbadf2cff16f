//! Spectral calculus: spectra of general matrices, the norm-limit spectral
//! radius, positivity, operator square roots by diagonalization or by the
//! binomial series, positive and negative parts, scalar functions of
//! Hermitian matrices, and the operator order.

use num_complex::Complex64;
use thiserror::Error;

use crate::mat::{herm_eig, hermitian_part, CMatrix, MatError};
use crate::qr;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("not positive: min eigenvalue {min_eig:.3e}, skew residual {skew:.3e}")]
    NotPositive { min_eig: f64, skew: f64 },
    #[error("series precondition failed: remainder norm {norm}")]
    SeriesPreconditionFailed { norm: f64 },
    #[error("series did not converge within {terms} terms")]
    SeriesNoConvergence { terms: usize },
    #[error("function undefined at spectrum point {lambda}")]
    FunctionUndefinedOnSpectrum { lambda: f64 },
}

/// Eigenvalue multiset. Values are sorted by real part, then imaginary
/// part, purely to make reports deterministic; no ordering is meaningful.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
}

impl Spectrum {
    pub fn radius(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn spectrum(a: &CMatrix) -> Spectrum {
    let mut values = qr::general_eigenvalues(a);
    values.sort_by(|x, y| {
        x.re.partial_cmp(&y.re).unwrap().then(x.im.partial_cmp(&y.im).unwrap())
    });
    Spectrum { values }
}

/// Spectral radius as the norm limit `|a^(2^k)|^(2^-k)`, with the powers
/// renormalized at every squaring so nothing overflows; the normalization
/// is carried in log scale. Returns the value at `k = k_max`, or exactly
/// zero if some power vanishes (nilpotent input).
pub fn spectral_radius_gelfand(a: &CMatrix, k_max: u32) -> f64 {
    let mut acc = 0.0f64;
    let mut cur = a.clone();
    let mut k = 0u32;
    loop {
        let s = cur.op_norm();
        if s == 0.0 {
            return 0.0;
        }
        acc += s.ln() / f64::powi(2.0, k as i32);
        if k == k_max {
            return acc.exp();
        }
        let b = cur.scale_re(1.0 / s);
        cur = &b * &b;
        k += 1;
    }
}

fn positivity(a: &CMatrix) -> (f64, f64, Option<f64>) {
    let norm = a.op_norm();
    let skew = a.herm_residual();
    if skew > tol::POSITIVITY_REL * norm.max(1.0) {
        return (norm, skew, None);
    }
    if norm == 0.0 {
        return (norm, skew, Some(0.0));
    }
    let hp = hermitian_part(a);
    let eig = herm_eig(&hp).expect("hermitian by construction");
    (norm, skew, Some(eig.values[0]))
}

/// Hermitian within the positivity tolerance and min eigenvalue at least
/// `-POSITIVITY_REL * |a|`. The threshold scales with the norm so that
/// `c* a c` stays positive for every congruence `c`.
pub fn is_positive(a: &CMatrix) -> bool {
    let (norm, _, min_eig) = positivity(a);
    match min_eig {
        None => false,
        Some(m) => m >= -tol::POSITIVITY_REL * norm,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrtMethod {
    /// Diagonalize and take scalar square roots of the eigenvalues.
    Eigen,
    /// Binomial series `sqrt(s) * sum c_n (1 - a/s)^n` at `s = |a|`, with
    /// `c_0 = 1`, `c_1 = -1/2`, and `c_{n+1} = c_n (2n - 1) / (2n + 2)`.
    Series,
}

pub fn sqrt_positive(a: &CMatrix, method: SqrtMethod) -> Result<CMatrix, SpectraError> {
    let (norm, skew, min_eig) = positivity(a);
    let bad = match min_eig {
        None => true,
        Some(m) => m < -tol::POSITIVITY_REL * norm,
    };
    if bad {
        return Err(SpectraError::NotPositive { min_eig: min_eig.unwrap_or(f64::NAN), skew });
    }
    if norm == 0.0 {
        return Ok(CMatrix::zeros(a.dim()));
    }
    match method {
        SqrtMethod::Eigen => {
            let eig = herm_eig(&hermitian_part(a)).expect("hermitian by construction");
            Ok(eig.reassemble(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)))
        }
        SqrtMethod::Series => {
            let hp = hermitian_part(a).scale_re(1.0 / norm);
            let m = &CMatrix::identity(a.dim()) - &hp;
            let rho = m.op_norm();
            if rho > 1.0 + tol::SERIES_PRECOND_SLACK {
                return Err(SpectraError::SeriesPreconditionFailed { norm: rho });
            }
            // 1 - a/s is a Hermitian contraction here, so the norm of its
            // n-th power is exactly rho^n; term norms come for free.
            let mut sum = CMatrix::identity(a.dim());
            let mut pw = CMatrix::identity(a.dim());
            let mut coeff = 1.0f64;
            let mut converged = false;
            for term in 1..=tol::SERIES_MAX_TERMS {
                let nm1 = (term - 1) as f64;
                coeff *= if term == 1 { -0.5 } else { (2.0 * nm1 - 1.0) / (2.0 * nm1 + 2.0) };
                pw = &pw * &m;
                sum = &sum + &pw.scale_re(coeff);
                if coeff.abs() * rho.powi(term as i32) < tol::SERIES_TERM_MIN {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(SpectraError::SeriesNoConvergence { terms: tol::SERIES_MAX_TERMS });
            }
            Ok(sum.scale_re(norm.sqrt()))
        }
    }
}

/// Split a Hermitian matrix into commuting positive parts `a = pos - neg`
/// via the scalar functions `(|l| + l)/2` and `(|l| - l)/2`.
pub fn pos_neg_parts(a: &CMatrix) -> Result<(CMatrix, CMatrix), SpectraError> {
    let eig = herm_eig(a)?;
    let pos = eig.reassemble(|l| Complex64::new((l.abs() + l) * 0.5, 0.0));
    let neg = eig.reassemble(|l| Complex64::new((l.abs() - l) * 0.5, 0.0));
    Ok((pos, neg))
}

/// `u f(L) u*` for Hermitian input. The function may return complex values;
/// a non-finite value at any eigenvalue is an error naming that point.
pub fn functional_calculus(
    a: &CMatrix,
    f: impl Fn(f64) -> Complex64,
) -> Result<CMatrix, SpectraError> {
    let eig = herm_eig(a)?;
    for &l in &eig.values {
        let y = f(l);
        if !y.re.is_finite() || !y.im.is_finite() {
            return Err(SpectraError::FunctionUndefinedOnSpectrum { lambda: l });
        }
    }
    Ok(eig.reassemble(f))
}

/// Operator order `a <= b` for Hermitian operands: `b - a` is positive.
pub fn order_leq(a: &CMatrix, b: &CMatrix) -> Result<bool, SpectraError> {
    if a.dim() != b.dim() {
        return Err(SpectraError::Mat(MatError::DimMismatch { left: a.dim(), right: b.dim() }));
    }
    for m in [a, b] {
        let residual = m.herm_residual();
        let allowed = tol::HERM_REL * m.op_norm().max(1.0);
        if residual > allowed {
            return Err(SpectraError::Mat(MatError::NotHermitian { residual, allowed }));
        }
    }
    Ok(is_positive(&(b - a)))
}
