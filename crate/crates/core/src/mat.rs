//! Square complex matrices, row-major, together with the factorizations the
//! rest of the workspace leans on: Hermitian eigendecomposition, singular
//! values, polar parts, and the Hilbert-Schmidt inner product.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::eig;
use crate::svd::{self, RectSvd};
use crate::tol;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const C_I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("not hermitian: skew residual {residual:.3e} exceeds {allowed:.3e}")]
    NotHermitian { residual: f64, allowed: f64 },
    #[error("dimension {dim} outside 1..={cap}")]
    DimensionOutOfRange { dim: usize, cap: usize },
    #[error("{len} entries do not fill a {dim}x{dim} matrix")]
    BadEntryCount { dim: usize, len: usize },
    #[error("non-finite entry at row {row}, col {col}")]
    NonFinite { row: usize, col: usize },
    #[error("zero matrix where a nonzero one is required")]
    ZeroMatrix,
}

/// Square matrix over the complex numbers. Entries are stored row-major and
/// the dimension is immutable after construction.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// Validating constructor: square entry count, finite entries, dimension
    /// inside `1..=DIM_CAP`.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, MatError> {
        if dim == 0 || dim > tol::DIM_CAP {
            return Err(MatError::DimensionOutOfRange { dim, cap: tol::DIM_CAP });
        }
        if data.len() != dim * dim {
            return Err(MatError::BadEntryCount { dim, len: data.len() });
        }
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MatError::NonFinite { row: k / dim, col: k % dim });
            }
        }
        Ok(CMatrix { dim, data })
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        CMatrix { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= tol::DIM_CAP, "dimension {dim} outside cap");
        CMatrix { dim, data: vec![C_ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C_ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = CMatrix::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = z;
        }
        m
    }

    pub fn diag_re(entries: &[f64]) -> Self {
        CMatrix::diag(&entries.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.dim + j] = z;
    }

    pub fn adj(&self) -> Self {
        let n = self.dim;
        CMatrix::from_fn(n, |i, j| self.data[j * n + i].conj())
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        CMatrix::from_fn(n, |i, j| self.data[j * n + i])
    }

    pub fn conj(&self) -> Self {
        CMatrix { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        CMatrix { dim: self.dim, data: self.data.iter().map(|&w| w * z).collect() }
    }

    pub fn scale_re(&self, x: f64) -> Self {
        CMatrix { dim: self.dim, data: self.data.iter().map(|&w| w * x).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn diag_entries(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).collect()
    }

    /// Frobenius (Hilbert-Schmidt) norm.
    pub fn norm_f(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Operator norm: the largest singular value.
    pub fn op_norm(&self) -> f64 {
        self.svd().sigma.first().copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Operator-norm distance to the adjoint, `|a - a*|`.
    pub fn herm_residual(&self) -> f64 {
        (self - &self.adj()).op_norm()
    }

    pub fn is_hermitian(&self) -> bool {
        self.herm_residual() <= tol::HERM_REL * self.op_norm().max(1.0)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length vs matrix dimension");
        let n = self.dim;
        let mut out = vec![C_ZERO; n];
        for i in 0..n {
            let mut acc = C_ZERO;
            for j in 0..n {
                acc += self.data[i * n + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 * n2;
        let mut out = CMatrix::zeros(n);
        for i1 in 0..n1 {
            for j1 in 0..n1 {
                let a = self.data[i1 * n1 + j1];
                if a == C_ZERO {
                    continue;
                }
                for i2 in 0..n2 {
                    for j2 in 0..n2 {
                        out.data[(i1 * n2 + i2) * n + (j1 * n2 + j2)] = a * other.data[i2 * n2 + j2];
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = CMatrix::identity(self.dim);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn svd(&self) -> RectSvd {
        svd::rect_svd(self.dim, self.dim, &self.data)
    }

    /// Number of singular values above `rel_tol * sigma_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        self.svd().rank(rel_tol)
    }

    /// Orthonormal basis of the range (left singular vectors above the cut).
    pub fn range_basis(&self, rel_tol: f64) -> Vec<Vec<Complex64>> {
        let s = self.svd();
        let r = s.rank(rel_tol);
        (0..r).map(|j| s.u.col(j)).collect()
    }

    /// Rank with the cut anchored to an external scale, for matrices that may
    /// be numerically zero (see [`crate::svd::RectSvd::rank_floor`]).
    pub fn rank_floor(&self, rel_tol: f64, floor: f64) -> usize {
        self.svd().rank_floor(rel_tol, floor)
    }

    /// Range basis with the cut anchored to an external scale.
    pub fn range_basis_floor(&self, rel_tol: f64, floor: f64) -> Vec<Vec<Complex64>> {
        let s = self.svd();
        let r = s.rank_floor(rel_tol, floor);
        (0..r).map(|j| s.u.col(j)).collect()
    }

    /// Orthonormal basis of the (right) nullspace.
    pub fn nullspace(&self, rel_tol: f64) -> Vec<Vec<Complex64>> {
        let s = self.svd();
        let r = s.rank(rel_tol);
        (r..self.dim).map(|j| s.v.col(j)).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.data[i * self.dim + j]).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Complex64> {
        self.data[i * self.dim..(i + 1) * self.dim].to_vec()
    }

    pub fn from_cols(cols: &[Vec<Complex64>]) -> Self {
        let n = cols.len();
        assert!(cols.iter().all(|c| c.len() == n), "columns must form a square matrix");
        CMatrix::from_fn(n, |i, j| cols[j][i])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

macro_rules! check_dims {
    ($a:expr, $b:expr) => {
        assert_eq!($a.dim, $b.dim, "matrix dimensions must agree");
    };
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        check_dims!(self, rhs);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        check_dims!(self, rhs);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix { dim: self.dim, data: self.data.iter().map(|&a| -a).collect() }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        check_dims!(self, rhs);
        let n = self.dim;
        let mut out = vec![C_ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C_ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for j in 0..n {
                    dst[j] += a * row[j];
                }
            }
        }
        CMatrix { dim: n, data: out }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix dim={}", self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self.at(i, j);
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Hilbert-Schmidt inner product `tr(a* b)`, conjugate-linear in `a`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<Complex64, MatError> {
    if a.dim != b.dim {
        return Err(MatError::DimMismatch { left: a.dim, right: b.dim });
    }
    Ok(a.data.iter().zip(&b.data).map(|(&x, &y)| x.conj() * y).sum())
}

pub fn comm(a: &CMatrix, b: &CMatrix) -> CMatrix {
    &(a * b) - &(b * a)
}

pub fn anticomm(a: &CMatrix, b: &CMatrix) -> CMatrix {
    &(a * b) + &(b * a)
}

/// Exactly Hermitian part `(a + a*)/2`; entry `(i, j)` and `(j, i)` are
/// conjugate by construction.
pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    let n = a.dim;
    CMatrix::from_fn(n, |i, j| (a.at(i, j) + a.at(j, i).conj()) * 0.5)
}

/// The four 2x2 spin matrices: `0` is the identity, `1..=3` the usual
/// x, y, z generators.
pub fn pauli(k: usize) -> CMatrix {
    let (a, b, c, d) = match k {
        0 => (C_ONE, C_ZERO, C_ZERO, C_ONE),
        1 => (C_ZERO, C_ONE, C_ONE, C_ZERO),
        2 => (C_ZERO, -C_I, C_I, C_ZERO),
        3 => (C_ONE, C_ZERO, C_ZERO, -C_ONE),
        _ => panic!("spin matrix index {k} outside 0..=3"),
    };
    CMatrix { dim: 2, data: vec![a, b, c, d] }
}

// ── vectors ─────────────────────────────────────────────────────────────

/// Inner product, conjugate-linear in the first argument.
pub fn vec_inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(&a, &b)| a.conj() * b).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_scale(x: &[Complex64], z: Complex64) -> Vec<Complex64> {
    x.iter().map(|&a| a * z).collect()
}

pub fn vec_sub(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    x.iter().zip(y).map(|(&a, &b)| a - b).collect()
}

pub fn vec_add(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    x.iter().zip(y).map(|(&a, &b)| a + b).collect()
}

/// Rank-one matrix `x y*`.
pub fn outer(x: &[Complex64], y: &[Complex64]) -> CMatrix {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    CMatrix::from_fn(n, |i, j| x[i] * y[j].conj())
}

/// Kronecker product of vectors, first factor on the slow index.
pub fn vec_kron(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for &a in x {
        for &b in y {
            out.push(a * b);
        }
    }
    out
}

// ── eigendecomposition ──────────────────────────────────────────────────

/// Eigensystem of a Hermitian matrix: ascending real eigenvalues, unitary
/// column eigenvectors. Each column is phased so its first component of
/// magnitude above 1e-12 is real and positive.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermEig {
    /// Reassemble `U f(L) U*` for a scalar function of the eigenvalues.
    pub fn reassemble(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let n = self.values.len();
        let u = &self.vectors;
        let mut scaled = CMatrix::zeros(n);
        for j in 0..n {
            let fj = f(self.values[j]);
            for i in 0..n {
                scaled.set(i, j, u.at(i, j) * fj);
            }
        }
        &scaled * &u.adj()
    }
}

pub fn herm_eig(a: &CMatrix) -> Result<HermEig, MatError> {
    let residual = a.herm_residual();
    let allowed = tol::HERM_REL * a.op_norm().max(1.0);
    if residual > allowed {
        return Err(MatError::NotHermitian { residual, allowed });
    }
    let (values, vectors) = eig::jacobi_hermitian(a);
    let n = a.dim;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let mut sorted_values = Vec::with_capacity(n);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for &idx in &order {
        sorted_values.push(values[idx]);
        cols.push(vectors.col(idx));
    }
    for col in cols.iter_mut() {
        let lead = col.iter().find(|z| z.norm() > 1e-12);
        if let Some(&z) = lead {
            let phase = z / z.norm();
            for entry in col.iter_mut() {
                *entry *= phase.conj();
            }
        }
    }
    Ok(HermEig { values: sorted_values, vectors: CMatrix::from_cols(&cols) })
}

/// Orthonormal kernel basis of a positive semidefinite Gram matrix
/// `g = a† a`, thresholded like the singular values of `a` itself:
/// an eigendirection counts as null when `sqrt(max(lambda, 0))` is at or
/// below `rel_tol * max(sigma_max, floor)`. Equivalent to the nullspace
/// of the rectangular factor, at the cost of one eigensolve in the small
/// dimension instead of orthogonalizing the tall block.
pub fn gram_nullspace_floor(g: &CMatrix, rel_tol: f64, floor: f64) -> Vec<Vec<Complex64>> {
    let h = hermitian_part(g);
    let (values, vectors) = eig::jacobi_hermitian(&h);
    let n = h.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let sigma_max = values
        .iter()
        .fold(0.0f64, |m, &l| m.max(l))
        .max(0.0)
        .sqrt();
    let cut = rel_tol * sigma_max.max(floor);
    order
        .into_iter()
        .filter(|&i| values[i].max(0.0).sqrt() <= cut)
        .map(|i| vectors.col(i))
        .collect()
}

// ── polar decomposition ─────────────────────────────────────────────────

/// `a = isometry_part * modulus` with `modulus = (a* a)^{1/2}` and the
/// isometry part mapping the range of the modulus onto the range of `a`,
/// vanishing on the orthogonal complement.
#[derive(Debug, Clone)]
pub struct PolarParts {
    pub isometry_part: CMatrix,
    pub modulus: CMatrix,
}

pub fn polar(a: &CMatrix) -> PolarParts {
    let n = a.dim;
    let s = a.svd();
    let r = s.rank(tol::RANK_REL);
    // modulus = V Sigma V*
    let mut vs = CMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            vs.set(i, j, s.v.at(i, j) * s.sigma[j]);
        }
    }
    let modulus = &vs * &s.v.adj();
    // isometry = U_r V_r*
    let mut ur = CMatrix::zeros(n);
    for j in 0..r {
        for i in 0..n {
            ur.set(i, j, s.u.at(i, j));
        }
    }
    let mut vr = CMatrix::zeros(n);
    for j in 0..r {
        for i in 0..n {
            vr.set(i, j, s.v.at(i, j));
        }
    }
    let isometry_part = &ur * &vr.adj();
    PolarParts { isometry_part, modulus }
}
