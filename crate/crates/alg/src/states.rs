//! States as density matrices, and their GNS representations.
//!
//! The GNS carrier for a state ρ on an n-by-n matrix algebra is realized
//! concretely as the span of {A·P} with P the support projection of ρ,
//! under the inner product ⟨A, B⟩ = Tr(ρ A* B). The carrier basis is built
//! deterministically by Gram-Schmidt over matrix units in lexicographic
//! order, so two builds of the same state are bit-identical.

use num_complex::Complex64;
use thiserror::Error;

use oplab_core::mat::{
    herm_eig, hs_inner, outer, vec_norm, CMatrix, HermEig, MatError, C_ONE, C_ZERO,
};
use oplab_core::svd::rect_nullspace_floor;
use oplab_core::tol;

#[derive(Debug, Error)]
pub enum StateError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("density matrix has negative spectrum: min eigenvalue {min_eig:.3e}")]
    NotPositive { min_eig: f64 },
    #[error("trace differs from one by {trace_dist:.3e}")]
    TraceNotOne { trace_dist: f64 },
    #[error("weights must be nonnegative and sum to one: {reason}")]
    BadWeights { reason: String },
    #[error("operands live on different spaces: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("zero operator admits no norming state")]
    ZeroMatrix,
    #[error("state is not invariant under the automorphism: residual {residual:.3e}")]
    NotInvariant { residual: f64 },
}

/// Density matrix: positive with unit trace.
#[derive(Debug, Clone)]
pub struct State {
    rho: CMatrix,
    eig: HermEig,
}

impl State {
    pub fn new(rho: CMatrix) -> Result<Self, StateError> {
        let eig = herm_eig(&rho)?;
        let min_eig = eig.values.first().copied().unwrap_or(0.0);
        let max_eig = eig.values.last().copied().unwrap_or(0.0);
        if min_eig < -tol::POSITIVITY_REL * max_eig.abs().max(1.0) {
            return Err(StateError::NotPositive { min_eig });
        }
        let trace_dist = (rho.trace() - C_ONE).norm();
        if trace_dist > tol::STATE_TRACE_ABS {
            return Err(StateError::TraceNotOne { trace_dist });
        }
        Ok(State { rho, eig })
    }

    /// Pure state from a nonzero vector.
    pub fn pure_from_vector(v: &[Complex64]) -> Result<Self, StateError> {
        let n = vec_norm(v);
        if n == 0.0 {
            return Err(StateError::ZeroMatrix);
        }
        let unit: Vec<Complex64> = v.iter().map(|z| z / n).collect();
        State::new(outer(&unit, &unit))
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.values
    }

    /// ω(A) = Tr(ρA).
    pub fn eval(&self, a: &CMatrix) -> Result<Complex64, StateError> {
        if a.dim() != self.dim() {
            return Err(StateError::DimMismatch { left: a.dim(), right: self.dim() });
        }
        let n = self.dim();
        let mut acc = C_ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self.rho.at(i, j) * a.at(j, i);
            }
        }
        Ok(acc)
    }

    /// Spectral rank, with near-zero eigenvalues treated as zero.
    pub fn rank(&self) -> usize {
        let cut = tol::STATE_RANK_REL * self.eig.values.last().copied().unwrap_or(0.0).max(0.0);
        self.eig.values.iter().filter(|&&l| l > cut).count()
    }

    pub fn is_pure(&self) -> bool {
        self.rank() == 1
    }

    pub fn is_faithful(&self) -> bool {
        self.eig.values.first().copied().unwrap_or(0.0) > tol::FAITHFUL_MIN
    }

    /// Support projection of the density matrix.
    pub fn support(&self) -> CMatrix {
        let cut = tol::STATE_RANK_REL * self.eig.values.last().copied().unwrap_or(0.0).max(0.0);
        self.eig.reassemble(|l| {
            if l > cut {
                C_ONE
            } else {
                C_ZERO
            }
        })
    }
}

/// Convex combination; weights must already be normalized.
pub fn mix(states: &[State], weights: &[f64]) -> Result<State, StateError> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(StateError::BadWeights {
            reason: format!("{} states against {} weights", states.len(), weights.len()),
        });
    }
    if let Some(&w) = weights.iter().find(|&&w| w < 0.0 || !w.is_finite()) {
        return Err(StateError::BadWeights { reason: format!("weight {w} out of range") });
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > tol::WEIGHT_SUM_ABS {
        return Err(StateError::BadWeights { reason: format!("weights sum to {sum}") });
    }
    let n = states[0].dim();
    for s in states {
        if s.dim() != n {
            return Err(StateError::DimMismatch { left: s.dim(), right: n });
        }
    }
    let mut rho = CMatrix::zeros(n);
    for (s, &w) in states.iter().zip(weights) {
        rho = &rho + &s.rho.scale_re(w);
    }
    State::new(rho)
}

/// Both halves of the Cauchy-Schwarz inequality for a state: the slack
/// ω(a*a)ω(b*b) − |ω(a*b)|², and the conjugate-symmetry defect
/// |ω(a*b) − conj(ω(b*a))|.
#[derive(Debug, Clone, Copy)]
pub struct CsReport {
    pub slack: f64,
    pub conj_residual: f64,
}

impl CsReport {
    pub fn ok(&self) -> bool {
        self.slack >= -tol::CS_SLACK_ABS && self.conj_residual <= tol::CS_CONJ_ABS
    }
}

pub fn cauchy_schwarz_check(s: &State, a: &CMatrix, b: &CMatrix) -> Result<CsReport, StateError> {
    let aa = s.eval(&(&a.adj() * a))?.re;
    let bb = s.eval(&(&b.adj() * b))?.re;
    let ab = s.eval(&(&a.adj() * b))?;
    let ba = s.eval(&(&b.adj() * a))?;
    Ok(CsReport {
        slack: aa * bb - ab.norm_sqr(),
        conj_residual: (ab - ba.conj()).norm(),
    })
}

/// A pure state attaining ‖a‖² on a*a: built from a top eigenvector of a*a.
pub fn norming_state(a: &CMatrix) -> Result<State, StateError> {
    if a.is_zero() {
        return Err(StateError::ZeroMatrix);
    }
    let gram = &a.adj() * a;
    let eig = herm_eig(&gram)?;
    let top = eig.vectors.col(a.dim() - 1);
    State::pure_from_vector(&top)
}

/// ρ₁ ⊗ ρ₂ under the natural tensor identification.
pub fn product_state(s1: &State, s2: &State) -> State {
    State::new(s1.rho.kron(&s2.rho)).expect("tensor product of density matrices is a density matrix")
}

// ── GNS construction ────────────────────────────────────────────────────

/// Carrier, representation, and distinguished cyclic vector for a state.
#[derive(Debug, Clone)]
pub struct GnsTriple {
    ambient_dim: usize,
    rep_dim: usize,
    rho: CMatrix,
    carrier: Vec<CMatrix>,
    omega_vec: Vec<Complex64>,
}

// ⟨x, y⟩_ρ = Tr(ρ x* y)
fn rho_inner(rho: &CMatrix, x: &CMatrix, y: &CMatrix) -> Complex64 {
    hs_inner(x, &(y * rho)).expect("dims agree by construction")
}

impl GnsTriple {
    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn carrier_basis(&self) -> &[CMatrix] {
        &self.carrier
    }

    /// Coordinates of the class of the identity: the cyclic vector.
    pub fn omega(&self) -> &[Complex64] {
        &self.omega_vec
    }

    /// The represented operator, as a matrix on the carrier.
    pub fn rep(&self, a: &CMatrix) -> Result<CMatrix, StateError> {
        if a.dim() != self.ambient_dim {
            return Err(StateError::DimMismatch { left: a.dim(), right: self.ambient_dim });
        }
        let k = self.rep_dim;
        let mut out = CMatrix::zeros(k);
        for (col, d) in self.carrier.iter().enumerate() {
            let image = &(a * d) * &self.rho;
            for (row, c) in self.carrier.iter().enumerate() {
                out.set(row, col, hs_inner(c, &image).expect("dims agree"));
            }
        }
        Ok(out)
    }

    /// ⟨Ω, rep(a) Ω⟩, which must reproduce the state.
    pub fn vector_expectation(&self, a: &CMatrix) -> Result<Complex64, StateError> {
        let r = self.rep(a)?;
        let img = r.apply(&self.omega_vec);
        let mut acc = C_ZERO;
        for (o, i) in self.omega_vec.iter().zip(&img) {
            acc += o.conj() * i;
        }
        Ok(acc)
    }
}

/// GNS construction with the canonical lexicographic seed ordering.
pub fn gns(s: &State) -> GnsTriple {
    let n = s.dim();
    let order: Vec<usize> = (0..n * n).collect();
    gns_seeded(s, &order)
}

/// GNS construction from a permuted seed ordering. Different orderings give
/// unitarily equivalent triples; the intertwiner is `gns_intertwiner`.
pub fn gns_seeded(s: &State, seed_order: &[usize]) -> GnsTriple {
    let n = s.dim();
    let rho = s.rho.clone();
    let lam_max = s.eigenvalues().last().copied().unwrap_or(0.0).max(0.0);
    let drop = tol::STATE_RANK_REL * lam_max;
    let mut carrier: Vec<CMatrix> = Vec::new();
    for &idx in seed_order {
        let (p, q) = (idx / n, idx % n);
        let unit = CMatrix::from_fn(n, |i, j| {
            if i == p && j == q {
                C_ONE
            } else {
                C_ZERO
            }
        });
        let mut r = unit;
        for _ in 0..2 {
            for d in &carrier {
                let c = rho_inner(&rho, d, &r);
                r = &r - &d.scale(c);
            }
        }
        let nsq = rho_inner(&rho, &r, &r).re.max(0.0);
        if nsq > drop * r.norm_f().powi(2).max(1.0) {
            carrier.push(r.scale_re(1.0 / nsq.sqrt()));
        }
    }
    let one = CMatrix::identity(n);
    let omega_vec: Vec<Complex64> = carrier.iter().map(|d| rho_inner(&rho, d, &one)).collect();
    GnsTriple { ambient_dim: n, rep_dim: carrier.len(), rho, carrier, omega_vec }
}

/// Unitary W with W·repₐ(x)·W* = rep_b(x) and W·Ωₐ = Ω_b, for two triples
/// built from the same state.
pub fn gns_intertwiner(a: &GnsTriple, b: &GnsTriple) -> Result<CMatrix, StateError> {
    if a.rep_dim != b.rep_dim || a.ambient_dim != b.ambient_dim {
        return Err(StateError::DimMismatch { left: a.rep_dim, right: b.rep_dim });
    }
    let k = a.rep_dim;
    let mut w = CMatrix::zeros(k);
    for (row, db) in b.carrier.iter().enumerate() {
        for (col, da) in a.carrier.iter().enumerate() {
            w.set(row, col, rho_inner(&a.rho, db, da));
        }
    }
    Ok(w)
}

/// Irreducibility via the commutant of the represented algebra: the full
/// matrix algebra is generated by a diagonal with distinct entries and the
/// cyclic shift, so the commutant of those two images already decides it.
pub fn gns_irreducible(t: &GnsTriple) -> bool {
    let n = t.ambient_dim;
    let diag = CMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(i as f64 + 1.0, 0.0)
        } else {
            C_ZERO
        }
    });
    let shift = CMatrix::from_fn(n, |i, j| {
        if i == (j + 1) % n {
            C_ONE
        } else {
            C_ZERO
        }
    });
    let gens = [
        t.rep(&diag).expect("ambient dims agree"),
        t.rep(&shift).expect("ambient dims agree"),
    ];
    let k = t.rep_dim;
    let kk = k * k;
    let mut data = vec![C_ZERO; 2 * kk * kk];
    for (g_idx, g) in gens.iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                let row = g_idx * kk + i * k + j;
                for p in 0..k {
                    data[row * kk + (p * k + j)] += g.at(i, p);
                }
                for q in 0..k {
                    data[row * kk + (i * k + q)] -= g.at(q, j);
                }
            }
        }
    }
    let scale = gens.iter().map(|g| g.norm_f()).fold(0.0, f64::max);
    let null = rect_nullspace_floor(2 * kk, kk, &data, tol::NULLSPACE_REL, scale);
    null.len() == 1
}

/// The unitary induced on the carrier by an inner automorphism A ↦ uAu*
/// that leaves the state invariant. Fixes Ω and intertwines the
/// representation with its composition with the automorphism.
pub fn implement_automorphism(t: &GnsTriple, u: &CMatrix) -> Result<CMatrix, StateError> {
    if u.dim() != t.ambient_dim {
        return Err(StateError::DimMismatch { left: u.dim(), right: t.ambient_dim });
    }
    let moved = &(u * &t.rho) * &u.adj();
    let residual = (&moved - &t.rho).op_norm();
    if residual > tol::AUT_INVARIANCE_ABS * t.rho.op_norm().max(1.0) {
        return Err(StateError::NotInvariant { residual });
    }
    let k = t.rep_dim;
    let mut big_u = CMatrix::zeros(k);
    for (col, d) in t.carrier.iter().enumerate() {
        let image = &(u * d) * &u.adj();
        for (row, c) in t.carrier.iter().enumerate() {
            big_u.set(row, col, rho_inner(&t.rho, c, &image));
        }
    }
    Ok(big_u)
}
