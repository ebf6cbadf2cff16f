//! Unital *-subalgebras of the full matrix algebra.
//!
//! A subalgebra is stored as an orthonormal basis of its linear span under
//! the Hilbert-Schmidt inner product, together with the generating set it was
//! built from. Generation closes the seed under unit, adjoints, and products.
//! The commutant is a nullspace computation against the generators, and the
//! projection lattice works with ranges, which stays correct for
//! noncommuting projections.

use num_complex::Complex64;
use thiserror::Error;

use oplab_core::mat::{hermitian_part, hs_inner, outer, vec_norm, CMatrix, MatError};
use oplab_core::spectra::is_positive;
use oplab_core::svd::rect_nullspace_floor;
use oplab_core::tol;

use crate::states::State;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("operands live on different spaces: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("not a projection: hermiticity residual {herm:.3e}, idempotency residual {idem:.3e}")]
    NotProjection { herm: f64, idem: f64 },
    #[error("ordering criteria disagree: {votes:?}")]
    InconsistentCriteria { votes: [bool; 5] },
    #[error("algebra has a nontrivial center of dimension {center_dim}")]
    NotFactor { center_dim: usize },
    #[error("element lies outside the algebra span, residual {residual:.3e}")]
    NotInAlgebra { residual: f64 },
    #[error("dimension value {value} is not within {tol:.1e} of an integer")]
    NonIntegerDimension { value: f64, tol: f64 },
}

/// Linear span of a unital *-closed, product-closed set of matrices.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    ambient_dim: usize,
    basis: Vec<CMatrix>,
    generators: Vec<CMatrix>,
    contains_unit: bool,
}

// Gram-Schmidt step against an accepted orthonormal list. Two projection
// passes keep the result orthogonal even when the candidate is nearly inside
// the span. Returns the normalized residual, or nothing when the candidate
// adds no direction.
fn hs_residual(basis: &[CMatrix], cand: &CMatrix) -> Option<CMatrix> {
    let scale = cand.norm_f().max(1.0);
    let mut r = cand.clone();
    for _ in 0..2 {
        for b in basis {
            let c = hs_inner(b, &r).expect("dims fixed by caller");
            r = &r - &b.scale(c);
        }
    }
    let n = r.norm_f();
    if n > tol::GS_DROP_REL * scale {
        Some(r.scale_re(1.0 / n))
    } else {
        None
    }
}

impl Subalgebra {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Linear dimension of the span.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn contains_unit(&self) -> bool {
        self.contains_unit
    }

    /// HS-orthogonal projection of `a` onto the span.
    pub fn project(&self, a: &CMatrix) -> Result<CMatrix, AlgebraError> {
        if a.dim() != self.ambient_dim {
            return Err(AlgebraError::DimMismatch { left: a.dim(), right: self.ambient_dim });
        }
        let mut p = CMatrix::zeros(self.ambient_dim);
        for b in &self.basis {
            let c = hs_inner(b, a)?;
            p = &p + &b.scale(c);
        }
        Ok(p)
    }

    /// Coordinates of `a` in the stored orthonormal basis.
    pub fn coords(&self, a: &CMatrix) -> Result<Vec<Complex64>, AlgebraError> {
        if a.dim() != self.ambient_dim {
            return Err(AlgebraError::DimMismatch { left: a.dim(), right: self.ambient_dim });
        }
        self.basis
            .iter()
            .map(|b| hs_inner(b, a).map_err(AlgebraError::from))
            .collect()
    }

    /// Distance from `a` to the span.
    pub fn span_residual(&self, a: &CMatrix) -> Result<f64, AlgebraError> {
        let p = self.project(a)?;
        Ok((a - &p).norm_f())
    }

    pub fn contains(&self, a: &CMatrix) -> Result<bool, AlgebraError> {
        let r = self.span_residual(a)?;
        Ok(r <= tol::CLOSURE_ABS * a.norm_f().max(1.0))
    }

    /// Orthogonal projector onto the span, acting on matrices flattened
    /// row-major into vectors of length `ambient_dim²`.
    pub fn span_projector(&self) -> CMatrix {
        span_projector_of(self.ambient_dim, &self.basis)
    }

    /// Span equality via the basis-independent projector comparison.
    pub fn span_equal(&self, other: &Subalgebra) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && self.span_distance(other) <= tol::SPAN_EQ_ABS
    }

    pub fn span_distance(&self, other: &Subalgebra) -> f64 {
        (&self.span_projector() - &other.span_projector()).op_norm()
    }

    /// Commutant within the ambient matrix algebra: the nullspace of
    /// X ↦ [X, G] over the generators (with their adjoints). Correctness
    /// does not depend on which generating set is used.
    pub fn commutant(&self) -> Subalgebra {
        let n = self.ambient_dim;
        let nn = n * n;
        let mut constraints: Vec<CMatrix> = Vec::new();
        if self.generators.is_empty() {
            constraints.extend(self.basis.iter().cloned());
        } else {
            for g in &self.generators {
                constraints.push(g.clone());
                constraints.push(g.adj());
            }
        }
        let rows = constraints.len() * nn;
        let mut data = vec![Complex64::new(0.0, 0.0); rows * nn];
        for (g_idx, g) in constraints.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let row = g_idx * nn + i * n + j;
                    // coefficient of X_{pq} in [G, X]_{ij} = Σ G_{ip}X_{pj} − X_{iq}G_{qj}
                    for p in 0..n {
                        data[row * nn + (p * n + j)] += g.at(i, p);
                    }
                    for q in 0..n {
                        data[row * nn + (i * n + q)] -= g.at(q, j);
                    }
                }
            }
        }
        // anchor the rank cut to the generator scale: central generators make
        // the whole constraint block vanish, and its rounding noise must not
        // masquerade as rank
        let scale = constraints.iter().map(|g| g.norm_f()).fold(0.0, f64::max);
        let null = rect_nullspace_floor(rows, nn, &data, tol::NULLSPACE_REL, scale);
        let basis: Vec<CMatrix> = null
            .into_iter()
            .map(|v| CMatrix::new(n, v).expect("nullspace vector has n² entries"))
            .collect();
        let generators = basis.clone();
        Subalgebra { ambient_dim: n, basis, generators, contains_unit: true }
    }

    /// Center and factor flag: elements of the span commuting with the
    /// whole algebra. Solved in span coordinates, so the system has only
    /// `dim` unknowns.
    pub fn center(&self) -> (Subalgebra, bool) {
        let n = self.ambient_dim;
        let nn = n * n;
        let k = self.basis.len();
        let mut constraints: Vec<CMatrix> = Vec::new();
        if self.generators.is_empty() {
            constraints.extend(self.basis.iter().cloned());
        } else {
            for g in &self.generators {
                constraints.push(g.clone());
                constraints.push(g.adj());
            }
        }
        let rows = constraints.len() * nn;
        let mut data = vec![Complex64::new(0.0, 0.0); rows * k];
        for (g_idx, g) in constraints.iter().enumerate() {
            for (m, b) in self.basis.iter().enumerate() {
                let c = &(g * b) - &(b * g);
                for i in 0..n {
                    for j in 0..n {
                        data[(g_idx * nn + i * n + j) * k + m] = -c.at(i, j);
                    }
                }
            }
        }
        let scale = constraints.iter().map(|g| g.norm_f()).fold(0.0, f64::max);
        let null = rect_nullspace_floor(rows, k, &data, tol::NULLSPACE_REL, scale);
        // coefficient vectors are orthonormal, and the basis is orthonormal,
        // so the assembled matrices are HS-orthonormal as well
        let basis: Vec<CMatrix> = null
            .iter()
            .map(|coef| {
                let mut m = CMatrix::zeros(n);
                for (x, b) in coef.iter().zip(&self.basis) {
                    m = &m + &b.scale(*x);
                }
                m
            })
            .collect();
        let is_factor = basis.len() == 1;
        let generators = basis.clone();
        (Subalgebra { ambient_dim: n, basis, generators, contains_unit: true }, is_factor)
    }
}

/// Projector onto the span of an HS-orthonormal family, as a matrix acting
/// on row-major flattened coordinates.
pub fn span_projector_of(ambient_dim: usize, orthonormal: &[CMatrix]) -> CMatrix {
    let nn = ambient_dim * ambient_dim;
    let mut p = CMatrix::zeros(nn);
    for b in orthonormal {
        p = &p + &outer(b.entries(), b.entries());
    }
    p
}

/// Smallest unital *-closed, product-closed subspace containing the
/// generators. Alternates product formation with orthonormalization until
/// the dimension stabilizes; the span dimension is capped by `n²`, so the
/// loop terminates.
pub fn generate(ambient_dim: usize, generators: &[CMatrix]) -> Result<Subalgebra, AlgebraError> {
    for g in generators {
        if g.dim() != ambient_dim {
            return Err(AlgebraError::DimMismatch { left: g.dim(), right: ambient_dim });
        }
    }
    let nn = ambient_dim * ambient_dim;
    let mut basis: Vec<CMatrix> = Vec::new();
    let mut seed: Vec<CMatrix> = vec![CMatrix::identity(ambient_dim)];
    for g in generators {
        seed.push(g.clone());
        seed.push(g.adj());
    }
    for s in &seed {
        if basis.len() == nn {
            break;
        }
        if let Some(b) = hs_residual(&basis, s) {
            basis.push(b);
        }
    }
    loop {
        let before = basis.len();
        if before == nn {
            break;
        }
        let snapshot = basis.clone();
        'pairs: for x in &snapshot {
            for y in &snapshot {
                let p = x * y;
                if let Some(b) = hs_residual(&basis, &p) {
                    basis.push(b);
                    if basis.len() == nn {
                        break 'pairs;
                    }
                }
            }
        }
        if basis.len() == before {
            break;
        }
    }
    Ok(Subalgebra {
        ambient_dim,
        basis,
        generators: generators.to_vec(),
        contains_unit: true,
    })
}

/// The full matrix algebra, with matrix units as the stored basis.
pub fn full_algebra(ambient_dim: usize) -> Subalgebra {
    let mut basis = Vec::with_capacity(ambient_dim * ambient_dim);
    for p in 0..ambient_dim {
        for q in 0..ambient_dim {
            basis.push(CMatrix::from_fn(ambient_dim, |i, j| {
                if i == p && j == q {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }));
        }
    }
    let generators = basis.clone();
    Subalgebra { ambient_dim, basis, generators, contains_unit: true }
}

pub(crate) fn from_orthonormal_parts(
    ambient_dim: usize,
    basis: Vec<CMatrix>,
    generators: Vec<CMatrix>,
) -> Subalgebra {
    Subalgebra { ambient_dim, basis, generators, contains_unit: true }
}

/// Double commutant agrees with the original span.
pub fn bicommutant_check(s: &Subalgebra) -> bool {
    s.commutant().commutant().span_equal(s)
}

// ── projection lattice ──────────────────────────────────────────────────

fn check_projection(e: &CMatrix) -> Result<(), AlgebraError> {
    let herm = e.herm_residual();
    let idem = (&(e * e) - e).op_norm();
    let allowed = tol::PROJ_ABS * e.op_norm().max(1.0);
    if herm > allowed || idem > allowed {
        return Err(AlgebraError::NotProjection { herm, idem });
    }
    Ok(())
}

pub fn is_projection(e: &CMatrix) -> bool {
    check_projection(e).is_ok()
}

fn projector_onto(vectors: &[Vec<Complex64>], dim: usize) -> CMatrix {
    let mut p = CMatrix::zeros(dim);
    for v in vectors {
        p = &p + &outer(v, v);
    }
    hermitian_part(&p)
}

/// Projector onto ran(E) + ran(F). Range arithmetic; no commutativity
/// assumption.
pub fn proj_join(e: &CMatrix, f: &CMatrix) -> Result<CMatrix, AlgebraError> {
    check_projection(e)?;
    check_projection(f)?;
    if e.dim() != f.dim() {
        return Err(AlgebraError::DimMismatch { left: e.dim(), right: f.dim() });
    }
    let n = e.dim();
    // columns of [E F] span ran(E)+ran(F)
    let mut data = vec![Complex64::new(0.0, 0.0); n * 2 * n];
    for i in 0..n {
        for j in 0..n {
            data[i * 2 * n + j] = e.at(i, j);
            data[i * 2 * n + n + j] = f.at(i, j);
        }
    }
    let svd = oplab_core::svd::rect_svd(n, 2 * n, &data);
    // a nonzero projection has operator norm one, so the rank cut can be
    // anchored at that scale; both arguments zero then joins to zero
    let r = svd.rank_floor(tol::RANK_REL, 1.0);
    let cols: Vec<Vec<Complex64>> = (0..r).map(|k| svd.u.col(k)).collect();
    Ok(projector_onto(&cols, n))
}

/// Projector onto ran(E) ∩ ran(F), by duality with the join of the
/// complements.
pub fn proj_meet(e: &CMatrix, f: &CMatrix) -> Result<CMatrix, AlgebraError> {
    check_projection(e)?;
    check_projection(f)?;
    if e.dim() != f.dim() {
        return Err(AlgebraError::DimMismatch { left: e.dim(), right: f.dim() });
    }
    let one = CMatrix::identity(e.dim());
    let j = proj_join(&(&one - e), &(&one - f))?;
    Ok(&one - &j)
}

/// All five orderings that characterize E ≤ F for projections, evaluated
/// independently; they must agree, and disagreement is reported as numerical
/// breakdown rather than resolved by fiat.
pub fn is_subprojection(e: &CMatrix, f: &CMatrix) -> Result<bool, AlgebraError> {
    check_projection(e)?;
    check_projection(f)?;
    if e.dim() != f.dim() {
        return Err(AlgebraError::DimMismatch { left: e.dim(), right: f.dim() });
    }
    let n = e.dim();
    let one = CMatrix::identity(n);

    // range inclusion: (1−F) kills every range vector of E
    let range_e = e.range_basis_floor(tol::RANK_REL, 1.0);
    let block = &one - f;
    let incl = range_e
        .iter()
        .all(|u| vec_norm(&block.apply(u)) <= tol::SUBPROJ_ABS);

    let fe = (&(f * e) - e).op_norm() <= tol::SUBPROJ_ABS;
    let ef = (&(e * f) - e).op_norm() <= tol::SUBPROJ_ABS;

    // contraction comparison on a deterministic frame
    let mut frame: Vec<Vec<Complex64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[i] = Complex64::new(1.0, 0.0);
        frame.push(v);
    }
    let sum = e + f;
    for j in 0..n {
        let c = sum.col(j);
        let nc = vec_norm(&c);
        if nc > 1e-8 {
            frame.push(c.iter().map(|z| z / nc).collect());
        }
    }
    let contract = frame
        .iter()
        .all(|x| vec_norm(&e.apply(x)) <= vec_norm(&f.apply(x)) + tol::SUBPROJ_ABS);

    let order = is_positive(&hermitian_part(&(f - e)));

    let votes = [incl, fe, ef, contract, order];
    if votes.iter().all(|&v| v) {
        Ok(true)
    } else if votes.iter().all(|&v| !v) {
        Ok(false)
    } else {
        Err(AlgebraError::InconsistentCriteria { votes })
    }
}

/// Partial isometry exchanging two projections of equal rank, relative to
/// the full matrix algebra: V maps an orthonormal basis of ran(E) onto one
/// of ran(F), so V*V = E and VV* = F.
pub fn mvn_equivalent(e: &CMatrix, f: &CMatrix) -> Result<Option<CMatrix>, AlgebraError> {
    check_projection(e)?;
    check_projection(f)?;
    if e.dim() != f.dim() {
        return Err(AlgebraError::DimMismatch { left: e.dim(), right: f.dim() });
    }
    let re = e.range_basis_floor(tol::RANK_REL, 1.0);
    let rf = f.range_basis_floor(tol::RANK_REL, 1.0);
    if re.len() != rf.len() {
        return Ok(None);
    }
    let n = e.dim();
    let mut v = CMatrix::zeros(n);
    for (fu, eu) in rf.iter().zip(&re) {
        v = &v + &outer(fu, eu);
    }
    Ok(Some(v))
}

/// Normalized rank of a projection inside a factor. Integer-valued: for a
/// k-by-k factor with uniform multiplicity the range is 0..=k, additive over
/// orthogonal projections, and equal on equivalent projections.
pub fn dimension_function(e: &CMatrix, m: &Subalgebra) -> Result<u64, AlgebraError> {
    check_projection(e)?;
    if e.dim() != m.ambient_dim() {
        return Err(AlgebraError::DimMismatch { left: e.dim(), right: m.ambient_dim() });
    }
    let (center, is_factor) = m.center();
    if !is_factor {
        return Err(AlgebraError::NotFactor { center_dim: center.dim() });
    }
    let residual = m.span_residual(e)?;
    if residual > tol::SPAN_EQ_ABS * e.norm_f().max(1.0) {
        return Err(AlgebraError::NotInAlgebra { residual });
    }
    let rank = e.rank_floor(tol::RANK_REL, 1.0) as f64;
    let value = rank * (m.dim() as f64).sqrt() / m.ambient_dim() as f64;
    let rounded = value.round();
    if (value - rounded).abs() > tol::DIMFN_INT_ABS {
        return Err(AlgebraError::NonIntegerDimension { value, tol: tol::DIMFN_INT_ABS });
    }
    Ok(rounded as u64)
}

/// The normalized matrix trace as a state on the ambient space. Tracial and
/// faithful on every subalgebra.
pub fn tracial_state(m: &Subalgebra) -> State {
    let n = m.ambient_dim();
    let rho = CMatrix::identity(n).scale_re(1.0 / n as f64);
    State::new(rho).expect("normalized identity is a valid density matrix")
}
