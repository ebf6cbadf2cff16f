//! Modular data for a cyclic and separating vector at finite dimension.
//!
//! Antilinear operators are represented explicitly as a matrix composed
//! with entrywise conjugation, v ↦ M·conj(v), in the fixed canonical basis.
//! The closure S is solved on the frame {BᵢΩ} through a pseudo-inverse, and
//! every power of the modular operator goes through the Hermitian
//! eigendecomposition rather than matrix inversion.

use num_complex::Complex64;
use thiserror::Error;

use oplab_core::mat::{
    herm_eig, hermitian_part, vec_norm, CMatrix, HermEig, MatError, C_ZERO,
};
use oplab_core::spectra::sqrt_positive;
use oplab_core::spectra::SqrtMethod;
use oplab_core::tol;

use crate::algebra::{self, Subalgebra};
use crate::states::State;

#[derive(Debug, Error)]
pub enum ModularError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error("vector vanishes")]
    ZeroVector,
    #[error("operands live on different spaces: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("vector is not cyclic: orbit spans {span_dim} of {ambient} dimensions")]
    NotCyclic { span_dim: usize, ambient: usize },
    #[error("vector is not separating: {nullspace_dim} algebra directions annihilate it")]
    NotSeparating { nullspace_dim: usize },
    #[error("frame condition number {cond:.3e} exceeds the solvable range")]
    IllConditioned { cond: f64 },
}

/// Antilinear operator v ↦ m·conj(v).
#[derive(Debug, Clone)]
pub struct AntiOp {
    m: CMatrix,
}

impl AntiOp {
    pub fn new(m: CMatrix) -> Self {
        AntiOp { m }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let conj: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
        self.m.apply(&conj)
    }

    /// Composition of two antilinear maps is linear: self ∘ other.
    pub fn compose_anti(&self, other: &AntiOp) -> CMatrix {
        &self.m * &other.m.conj()
    }

    /// Linear-after-antilinear: l ∘ self.
    pub fn then_linear(&self, l: &CMatrix) -> AntiOp {
        AntiOp { m: l * &self.m }
    }

    /// Antilinear-after-linear: self ∘ l.
    pub fn after_linear(&self, l: &CMatrix) -> AntiOp {
        AntiOp { m: &self.m * &l.conj() }
    }

    /// Adjoint with respect to ⟨w, Av⟩ = ⟨v, A*w⟩: transposition of the
    /// matrix part.
    pub fn adjoint(&self) -> AntiOp {
        AntiOp { m: self.m.transpose() }
    }

    /// A ∘ A as a linear map.
    pub fn squared(&self) -> CMatrix {
        self.compose_anti(self)
    }

    pub fn is_antiunitary(&self) -> bool {
        let n = self.m.dim();
        (&(&self.m.adj() * &self.m) - &CMatrix::identity(n)).op_norm() <= tol::UNITARY_ABS * 10.0
    }
}

/// Modular operator, modular conjugation, the vector, and the algebra they
/// were built from.
#[derive(Debug, Clone)]
pub struct ModularData {
    delta: CMatrix,
    delta_eig: HermEig,
    conj: AntiOp,
    omega: Vec<Complex64>,
    algebra: Subalgebra,
    frame_cond: f64,
}

impl ModularData {
    pub fn delta(&self) -> &CMatrix {
        &self.delta
    }

    pub fn conj(&self) -> &AntiOp {
        &self.conj
    }

    pub fn omega(&self) -> &[Complex64] {
        &self.omega
    }

    pub fn algebra(&self) -> &Subalgebra {
        &self.algebra
    }

    pub fn frame_condition(&self) -> f64 {
        self.frame_cond
    }

    /// Ascending spectrum of the modular operator.
    pub fn delta_spectrum(&self) -> &[f64] {
        &self.delta_eig.values
    }

    /// Real power Δ^p through the eigendecomposition.
    pub fn delta_power(&self, p: f64) -> CMatrix {
        self.delta_eig.reassemble(|l| Complex64::new(l.max(0.0).powf(p), 0.0))
    }

    /// Unitary Δ^{it}.
    pub fn delta_it(&self, t: f64) -> CMatrix {
        self.delta_eig
            .reassemble(|l| (Complex64::new(0.0, t * l.max(f64::MIN_POSITIVE).ln())).exp())
    }
}

fn orbit_matrix(m: &Subalgebra, omega: &[Complex64]) -> (usize, usize, Vec<Complex64>) {
    let n = m.ambient_dim();
    let k = m.dim();
    let mut data = vec![C_ZERO; n * k];
    for (c, b) in m.basis().iter().enumerate() {
        let img = b.apply(omega);
        for (r, z) in img.into_iter().enumerate() {
            data[r * k + c] = z;
        }
    }
    (n, k, data)
}

fn check_vector(m: &Subalgebra, omega: &[Complex64]) -> Result<(), ModularError> {
    if omega.len() != m.ambient_dim() {
        return Err(ModularError::DimMismatch { left: omega.len(), right: m.ambient_dim() });
    }
    if vec_norm(omega) == 0.0 {
        return Err(ModularError::ZeroVector);
    }
    Ok(())
}

/// The orbit {BΩ} spans the whole space.
pub fn is_cyclic(m: &Subalgebra, omega: &[Complex64]) -> Result<bool, ModularError> {
    check_vector(m, omega)?;
    let (rows, cols, data) = orbit_matrix(m, omega);
    let rank = oplab_core::svd::rect_rank(rows, cols, &data, tol::RANK_REL);
    Ok(rank == rows)
}

/// No algebra element annihilates the vector: the coefficient map has
/// trivial nullspace. The same orbit matrix decides both properties, as
/// row rank for cyclicity and column rank here.
pub fn is_separating(m: &Subalgebra, omega: &[Complex64]) -> Result<bool, ModularError> {
    check_vector(m, omega)?;
    let (rows, cols, data) = orbit_matrix(m, omega);
    let rank = oplab_core::svd::rect_rank(rows, cols, &data, tol::RANK_REL);
    Ok(rank == cols)
}

/// Closure, modular operator, and modular conjugation for a cyclic and
/// separating vector: S·BΩ = B*Ω solved over the frame, Δ = S*S, and
/// J = S·Δ^{-1/2}.
pub fn tomita(m: &Subalgebra, omega: &[Complex64]) -> Result<ModularData, ModularError> {
    check_vector(m, omega)?;
    let (rows, cols, data) = orbit_matrix(m, omega);
    let svd = oplab_core::svd::rect_svd(rows, cols, &data);
    let rank = svd.rank(tol::RANK_REL);
    if rank < rows {
        return Err(ModularError::NotCyclic { span_dim: rank, ambient: rows });
    }
    if rank < cols {
        return Err(ModularError::NotSeparating { nullspace_dim: cols - rank });
    }
    // both properties force a square invertible frame
    let n = rows;
    let cond = svd.cond();
    if !cond.is_finite() || cond > tol::FRAME_COND_MAX {
        return Err(ModularError::IllConditioned { cond });
    }

    // S as an antilinear map: M_S · conj(Q) = R with Q, R the frames of
    // BᵢΩ and Bᵢ*Ω
    let mut q = CMatrix::zeros(n);
    let mut r = CMatrix::zeros(n);
    for (c, b) in m.basis().iter().enumerate() {
        let img = b.apply(omega);
        let adj_img = b.adj().apply(omega);
        for i in 0..n {
            q.set(i, c, img[i]);
            r.set(i, c, adj_img[i]);
        }
    }
    let q_conj_svd = q.conj().svd();
    let mut inv = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = C_ZERO;
            for (k, &s) in q_conj_svd.sigma.iter().enumerate() {
                acc += q_conj_svd.v.at(i, k) * q_conj_svd.u.at(j, k).conj() / s;
            }
            inv.set(i, j, acc);
        }
    }
    let m_s = &r * &inv;

    // Δ = S*S has matrix M_Sᵀ·conj(M_S); symmetrize away the rounding
    let delta = hermitian_part(&(&m_s.transpose() * &m_s.conj()));
    let delta_eig = herm_eig(&delta)?;
    if delta_eig.values.first().copied().unwrap_or(0.0) <= 0.0 {
        return Err(ModularError::IllConditioned { cond });
    }
    let inv_sqrt = delta_eig.reassemble(|l| Complex64::new(1.0 / l.sqrt(), 0.0));
    let conj = AntiOp::new(&m_s * &inv_sqrt.conj());

    Ok(ModularData {
        delta,
        delta_eig,
        conj,
        omega: omega.to_vec(),
        algebra: m.clone(),
        frame_cond: cond,
    })
}

/// Residuals of the defining modular identities plus the two structure
/// theorems: conjugation carries the algebra onto its commutant, and the
/// flow preserves the algebra.
#[derive(Debug, Clone)]
pub struct TomitaReport {
    /// ‖J² − 1‖
    pub j_squared: f64,
    /// ‖J − J*‖ on the matrix parts
    pub j_selfadjoint: f64,
    /// ‖JΩ − Ω‖
    pub j_fixes_omega: f64,
    /// ‖ΔΩ − Ω‖
    pub delta_fixes_omega: f64,
    /// ‖Δ^{-1/2} − JΔ^{1/2}J‖
    pub half_power_conj: f64,
    /// span(J·M·J) against span of the commutant
    pub conj_span: f64,
    /// (t, max residual of Δ^{it}BΔ^{-it} against the span of M)
    pub flow_span: Vec<(f64, f64)>,
    pub ok: bool,
}

pub fn verify_tomita_takesaki(d: &ModularData) -> TomitaReport {
    let n = d.delta.dim();
    let one = CMatrix::identity(n);
    let j = &d.conj;
    let j_squared = (&j.squared() - &one).op_norm();
    let j_adj = j.adjoint();
    let j_selfadjoint = (j.matrix() - j_adj.matrix()).op_norm();
    let j_fixes_omega = {
        let img = j.apply(&d.omega);
        let diff: Vec<Complex64> = img.iter().zip(&d.omega).map(|(a, b)| a - b).collect();
        vec_norm(&diff)
    };
    let delta_fixes_omega = {
        let img = d.delta.apply(&d.omega);
        let diff: Vec<Complex64> = img.iter().zip(&d.omega).map(|(a, b)| a - b).collect();
        vec_norm(&diff)
    };
    let half_power_conj = {
        let sqrt = sqrt_positive(&d.delta, SqrtMethod::Eigen)
            .expect("modular operator is strictly positive");
        // J Δ^{1/2} J as a linear map
        let sandwich = &(j.matrix() * &sqrt.conj()) * &j.matrix().conj();
        (&d.delta_power(-0.5) - &sandwich).op_norm()
    };

    // J M J against the commutant, as spans
    let conj_span = {
        let mut imgs: Vec<CMatrix> = Vec::new();
        for b in d.algebra.basis() {
            imgs.push(&(j.matrix() * &b.conj()) * &j.matrix().conj());
        }
        // conjugation by an antiunitary preserves HS orthonormality, but
        // re-orthonormalize to keep the projector comparison honest
        let mut ortho: Vec<CMatrix> = Vec::new();
        for im in &imgs {
            let mut r = im.clone();
            for _ in 0..2 {
                for o in &ortho {
                    let c = oplab_core::mat::hs_inner(o, &r).expect("same ambient dim");
                    r = &r - &o.scale(c);
                }
            }
            let nr = r.norm_f();
            if nr > tol::GS_DROP_REL {
                ortho.push(r.scale_re(1.0 / nr));
            }
        }
        let comm = d.algebra.commutant();
        let p_conj = algebra::span_projector_of(n, &ortho);
        (&p_conj - &comm.span_projector()).op_norm()
    };

    let mut flow_span = Vec::new();
    let mut flow_ok = true;
    for &t in &[0.1, -0.1, 1.0, -1.0, std::f64::consts::PI, -std::f64::consts::PI] {
        let u = d.delta_it(t);
        let mut worst = 0.0f64;
        for b in d.algebra.basis() {
            let moved = &(&u * b) * &u.adj();
            let res = d
                .algebra
                .span_residual(&moved)
                .expect("ambient dims agree");
            worst = worst.max(res);
        }
        flow_ok &= worst <= tol::MODULAR_FLOW_SPAN_ABS;
        flow_span.push((t, worst));
    }

    let ok = j_squared <= tol::MODULAR_ID_ABS
        && j_selfadjoint <= tol::MODULAR_ID_ABS
        && j_fixes_omega <= tol::MODULAR_ID_ABS
        && delta_fixes_omega <= tol::MODULAR_ID_ABS
        && half_power_conj <= tol::MODULAR_ID_ABS
        && conj_span <= tol::MODULAR_CONJ_SPAN_ABS
        && flow_ok;

    TomitaReport {
        j_squared,
        j_selfadjoint,
        j_fixes_omega,
        delta_fixes_omega,
        half_power_conj,
        conj_span,
        flow_span,
        ok,
    }
}

/// σ_t(A) = Δ^{it} A Δ^{-it}.
pub fn modular_flow(d: &ModularData, t: f64, a: &CMatrix) -> CMatrix {
    let u = d.delta_it(t);
    &(&u * a) * &u.adj()
}

/// Defect of the modular condition at inverse temperature one:
/// |⟨Ω, (Δ^{-1}AΔ)BΩ⟩ − ⟨Ω, BAΩ⟩|.
pub fn kms_check(d: &ModularData, a: &CMatrix, b: &CMatrix) -> f64 {
    kms_check_beta(d, a, b, 1.0)
}

/// Same defect with σ_{iβ}(A) = Δ^{-β}·A·Δ^{β} as the continuation
/// convention.
pub fn kms_check_beta(d: &ModularData, a: &CMatrix, b: &CMatrix, beta: f64) -> f64 {
    let shifted = &(&d.delta_power(-beta) * a) * &d.delta_power(beta);
    let lhs = vec_dot(&d.omega, &shifted.apply(&b.apply(&d.omega)));
    let rhs = vec_dot(&d.omega, &b.apply(&a.apply(&d.omega)));
    (lhs - rhs).norm()
}

fn vec_dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Standard-form realization of a state: the left-multiplication algebra
/// on the doubled space, with vector (ρ^{1/2} ⊗ 1)·Σ eₖ⊗eₖ. For faithful ρ
/// the vector is cyclic and separating and the modular spectrum consists of
/// eigenvalue ratios of ρ.
pub fn purify(s: &State) -> (Subalgebra, Vec<Complex64>) {
    let n = s.dim();
    let sqrt = sqrt_positive(s.rho(), SqrtMethod::Eigen)
        .expect("density matrices are positive");
    let mut omega = vec![C_ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            omega[i * n + j] = sqrt.at(i, j);
        }
    }
    let id = CMatrix::identity(n);
    let mut basis = Vec::with_capacity(n * n);
    let scale = 1.0 / (n as f64).sqrt();
    for p in 0..n {
        for q in 0..n {
            let unit = CMatrix::from_fn(n, |i, j| {
                if i == p && j == q {
                    Complex64::new(scale, 0.0)
                } else {
                    C_ZERO
                }
            });
            basis.push(unit.kron(&id));
        }
    }
    let generators = basis.clone();
    let alg = algebra::from_orthonormal_parts(n * n, basis, generators);
    (alg, omega)
}
