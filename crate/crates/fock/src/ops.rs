//! Ladder operators, fields, and exponentiated fields on graded spaces,
//! with residual reports against the canonical (anti)commutation relations.
//!
//! Symmetric-space identities are stated on guarded sectors: the creator
//! truncates overflow from the top sector, so commutation relations hold
//! only below the cap and are always reported as residuals, never asserted
//! exactly on the full truncated space.

use num_complex::Complex64;
use oplab_core::mat::{anticomm, comm, herm_eig, vec_inner, CMatrix, C_ZERO};
use oplab_core::tol;

use crate::space::{binomial, FockError, FockSpace, FockVector, Statistics, DIM_CAP};

fn require(space: &FockSpace, stat: Statistics, expected: &'static str) -> Result<(), FockError> {
    if space.statistics() != stat {
        return Err(FockError::WrongStatistics { expected });
    }
    Ok(())
}

fn check_one_particle(space: &FockSpace, f: &[Complex64]) -> Result<(), FockError> {
    if f.len() != space.one_particle_dim() {
        return Err(FockError::DimMismatch {
            left: f.len(),
            right: space.one_particle_dim(),
        });
    }
    Ok(())
}

/// Projection of the full tensor power onto its symmetric (`Bose`) or
/// antisymmetric (`Fermi`) subspace, as a dense matrix on `(C^d)^{⊗n}`.
pub fn symmetrizer(n: usize, d: usize, parity: Statistics) -> Result<CMatrix, FockError> {
    assert!(n >= 1, "at least one tensor factor");
    let dim = d
        .checked_pow(n as u32)
        .ok_or(FockError::DimensionCapExceeded { dim: usize::MAX, cap: DIM_CAP })?;
    if dim > DIM_CAP {
        return Err(FockError::DimensionCapExceeded { dim, cap: DIM_CAP });
    }
    // permutations in a deterministic order, with parity tracked by
    // transposition count
    let mut perms: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1.0;
    perms.push((idx.clone(), sign));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                idx.swap(0, i);
            } else {
                idx.swap(c[i], i);
            }
            sign = -sign;
            perms.push((idx.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let fact: f64 = perms.len() as f64;
    let mut p = CMatrix::zeros(dim);
    let mut tuple = vec![0usize; n];
    let mut image = vec![0usize; n];
    for col in 0..dim {
        let mut rem = col;
        for slot in (0..n).rev() {
            tuple[slot] = rem % d;
            rem /= d;
        }
        for (perm, s) in &perms {
            for m in 0..n {
                image[perm[m]] = tuple[m];
            }
            let mut row = 0usize;
            for &x in image.iter() {
                row = row * d + x;
            }
            let eps = match parity {
                Statistics::Bose => 1.0,
                Statistics::Fermi => *s,
            };
            let prev = p.at(row, col);
            p.set(row, col, prev + Complex64::new(eps / fact, 0.0));
        }
    }
    Ok(p)
}

/// Creation operator for a one-particle vector, linear in its argument.
/// On the symmetric space the output beyond the top sector is projected
/// away; the antisymmetric space is exact.
pub fn create(space: &FockSpace, f: &[Complex64]) -> Result<CMatrix, FockError> {
    check_one_particle(space, f)?;
    let mut m = CMatrix::zeros(space.total_dim());
    match space.statistics() {
        Statistics::Bose => {
            let d = space.one_particle_dim();
            for sector in 0..space.max_particles() {
                let dim = space.sector_dims()[sector];
                for pos in 0..dim {
                    let col = space.sector_offset(sector) + pos;
                    let occ = space.occupation(sector, pos).to_vec();
                    for i in 0..d {
                        if f[i] == C_ZERO {
                            continue;
                        }
                        let mut up = occ.clone();
                        up[i] += 1;
                        let row = space.occupation_index(&up);
                        let amp = f[i] * ((occ[i] + 1) as f64).sqrt();
                        let prev = m.at(row, col);
                        m.set(row, col, prev + amp);
                    }
                }
            }
        }
        Statistics::Fermi => {
            let d = space.one_particle_dim();
            for sector in 0..space.max_particles() {
                let dim = space.sector_dims()[sector];
                for pos in 0..dim {
                    let col = space.sector_offset(sector) + pos;
                    let mask = space.mask(sector, pos);
                    for i in 0..d {
                        if f[i] == C_ZERO || mask & (1 << i) != 0 {
                            continue;
                        }
                        let below = (mask & ((1u64 << i) - 1)).count_ones();
                        let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
                        let row = space.mask_index(mask | (1 << i));
                        let prev = m.at(row, col);
                        m.set(row, col, prev + f[i] * sign);
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Annihilation operator: the adjoint of creation, hence antilinear in its
/// argument, with adjointness exact by construction on the whole space.
pub fn annihilate(space: &FockSpace, f: &[Complex64]) -> Result<CMatrix, FockError> {
    Ok(create(space, f)?.adj())
}

/// The grading operator: multiplication by the particle count per sector.
pub fn number_operator(space: &FockSpace) -> CMatrix {
    CMatrix::from_fn(space.total_dim(), |i, j| {
        if i == j {
            Complex64::new(space.sector_of(i) as f64, 0.0)
        } else {
            C_ZERO
        }
    })
}

/// Orthogonal projection onto the sectors `0..=up_to`.
pub fn sector_projector(space: &FockSpace, up_to: usize) -> CMatrix {
    CMatrix::from_fn(space.total_dim(), |i, j| {
        if i == j && space.sector_of(i) <= up_to {
            Complex64::new(1.0, 0.0)
        } else {
            C_ZERO
        }
    })
}

/// Norm of `([a(f), a*(g)] − ⟨f,g⟩)·P` with `P` guarding the sectors below
/// the truncation cap, where the commutation relation is exact.
pub fn ccr_residual(
    space: &FockSpace,
    f: &[Complex64],
    g: &[Complex64],
) -> Result<f64, FockError> {
    require(space, Statistics::Bose, "bose")?;
    check_one_particle(space, f)?;
    check_one_particle(space, g)?;
    if space.max_particles() == 0 {
        return Ok(0.0);
    }
    let a = annihilate(space, f)?;
    let astar = create(space, g)?;
    let scalar = vec_inner(f, g);
    let id = CMatrix::identity(space.total_dim());
    let defect = &comm(&a, &astar) - &id.scale(scalar);
    let guard = sector_projector(space, space.max_particles() - 1);
    Ok((&defect * &guard).op_norm())
}

/// Anticommutation residuals on the exact antisymmetric space.
#[derive(Debug, Clone, Copy)]
pub struct CarReport {
    /// ‖{a(f), a(g)}‖
    pub annihilator_pair: f64,
    /// ‖{a*(f), a*(g)}‖
    pub creator_pair: f64,
    /// ‖{a(f), a*(g)} − ⟨f,g⟩·1‖
    pub mixed_defect: f64,
    /// ‖a*(f)·a*(f)‖, double occupation of one argument
    pub double_creation: f64,
}

impl CarReport {
    pub fn ok(&self) -> bool {
        self.annihilator_pair <= tol::CAR_ABS
            && self.creator_pair <= tol::CAR_ABS
            && self.mixed_defect <= tol::CAR_ABS
            && self.double_creation <= tol::CAR_ABS
    }
}

pub fn car_check(
    space: &FockSpace,
    f: &[Complex64],
    g: &[Complex64],
) -> Result<CarReport, FockError> {
    require(space, Statistics::Fermi, "fermi")?;
    check_one_particle(space, f)?;
    check_one_particle(space, g)?;
    let af = annihilate(space, f)?;
    let ag = annihilate(space, g)?;
    let cf = create(space, f)?;
    let cg = create(space, g)?;
    let scalar = vec_inner(f, g);
    let id = CMatrix::identity(space.total_dim());
    Ok(CarReport {
        annihilator_pair: anticomm(&af, &ag).op_norm(),
        creator_pair: anticomm(&cf, &cg).op_norm(),
        mixed_defect: (&anticomm(&af, &cg) - &id.scale(scalar)).op_norm(),
        double_creation: (&cf * &cf).op_norm(),
    })
}

/// The Hermitian field `(a(f) + a*(f))/√2` on the symmetric space.
pub fn field(space: &FockSpace, f: &[Complex64]) -> Result<CMatrix, FockError> {
    require(space, Statistics::Bose, "bose")?;
    check_one_particle(space, f)?;
    let c = create(space, f)?;
    Ok((&c.adj() + &c).scale_re(1.0 / 2.0f64.sqrt()))
}

/// The conjugate field: the field evaluated on the rotated argument `i·f`.
pub fn conjugate_field(space: &FockSpace, f: &[Complex64]) -> Result<CMatrix, FockError> {
    let rotated: Vec<Complex64> = f.iter().map(|z| z * Complex64::new(0.0, 1.0)).collect();
    field(space, &rotated)
}

/// The exponentiated field `exp(i·Φ(f))`, assembled from the eigensystem of
/// the truncated field so that unitarity is exact up to eigensolver error.
pub fn weyl(space: &FockSpace, f: &[Complex64]) -> Result<CMatrix, FockError> {
    let phi = field(space, f)?;
    let eig = herm_eig(&phi)?;
    Ok(eig.reassemble(|l| Complex64::from_polar(1.0, l)))
}

/// ‖W(f)·W(g) − e^{−i·Im⟨f,g⟩/2}·W(f+g)‖: the composition defect of the
/// exponentiated fields, nonzero only through truncation.
pub fn weyl_relation_residual(
    space: &FockSpace,
    f: &[Complex64],
    g: &[Complex64],
) -> Result<f64, FockError> {
    let wf = weyl(space, f)?;
    let wg = weyl(space, g)?;
    let sum: Vec<Complex64> = f.iter().zip(g).map(|(x, y)| x + y).collect();
    let wsum = weyl(space, &sum)?;
    let twist = vec_inner(f, g).im;
    let phase = Complex64::from_polar(1.0, -twist / 2.0);
    Ok((&(&wf * &wg) - &wsum.scale(phase)).op_norm())
}

/// ‖W(f) − 1‖, the quantity whose supremum over nonzero `f` detects the
/// norm discontinuity of the exponentiated field.
pub fn weyl_distance_from_identity(space: &FockSpace, f: &[Complex64]) -> Result<f64, FockError> {
    let w = weyl(space, f)?;
    Ok((&w - &CMatrix::identity(space.total_dim())).op_norm())
}

/// Vacuum expectation `⟨Ω, W(f)Ω⟩`; converges to the Gaussian value
/// `exp(−‖f‖²/4)` as the particle cap grows.
pub fn vacuum_weyl(space: &FockSpace, f: &[Complex64]) -> Result<Complex64, FockError> {
    let w = weyl(space, f)?;
    Ok(w.at(0, 0))
}

/// The normalized n-particle vector `(1/√n!)·a*(f₁)⋯a*(fₙ)·Ω`; for the
/// antisymmetric space a repeated argument collapses it to zero.
pub fn multiparticle(space: &FockSpace, fs: &[Vec<Complex64>]) -> Result<FockVector, FockError> {
    let n = fs.len();
    if n > space.max_particles() {
        return Err(FockError::SectorOverflow { particles: n, cap: space.max_particles() });
    }
    let mut amps = space.vacuum().amplitudes().to_vec();
    for f in fs.iter().rev() {
        let c = create(space, f)?;
        amps = c.apply(&amps);
    }
    let mut fact = 1.0;
    for j in 1..=n {
        fact *= j as f64;
    }
    let scale = 1.0 / fact.sqrt();
    let amps: Vec<Complex64> = amps.iter().map(|z| z * scale).collect();
    FockVector::new(space, amps)
}

/// Covariance of the exponentiated field under the phase rotation
/// `f ↦ e^{iθ}f`, implemented on the graded space by `exp(iθN)`.
#[derive(Debug, Clone, Copy)]
pub struct BogoliubovReport {
    /// |Im⟨e^{iθ}f, e^{iθ}g⟩ − Im⟨f, g⟩|: the rotation preserves the
    /// symplectic form identically, so this is machine-level.
    pub symplectic_defect: f64,
    /// ‖Γ·W(f)·Γ* − W(e^{iθ}f)‖ with Γ = exp(iθN).
    pub covariance_residual: f64,
}

impl BogoliubovReport {
    pub fn ok(&self) -> bool {
        self.symplectic_defect <= 1e-12
            && self.covariance_residual <= tol::PHASE_COVARIANCE_ABS
    }
}

pub fn bogoliubov_check(
    space: &FockSpace,
    theta: f64,
    f: &[Complex64],
    g: &[Complex64],
) -> Result<BogoliubovReport, FockError> {
    require(space, Statistics::Bose, "bose")?;
    check_one_particle(space, f)?;
    check_one_particle(space, g)?;
    let phase = Complex64::from_polar(1.0, theta);
    let tf: Vec<Complex64> = f.iter().map(|z| z * phase).collect();
    let tg: Vec<Complex64> = g.iter().map(|z| z * phase).collect();
    let symplectic_defect = (vec_inner(&tf, &tg).im
        - vec_inner(f, g).im)
        .abs();
    let gamma = CMatrix::from_fn(space.total_dim(), |i, j| {
        if i == j {
            Complex64::from_polar(1.0, theta * space.sector_of(i) as f64)
        } else {
            C_ZERO
        }
    });
    let wf = weyl(space, f)?;
    let wtf = weyl(space, &tf)?;
    let conjugated = &(&gamma * &wf) * &gamma.adj();
    Ok(BogoliubovReport {
        symplectic_defect,
        covariance_residual: (&conjugated - &wtf).op_norm(),
    })
}

/// Binomial coefficient, re-exported for sector-count oracles.
pub fn sector_count(n: usize, k: usize) -> usize {
    binomial(n, k)
}
