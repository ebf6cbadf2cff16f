//! Extremal correlations: the spin-singlet example with its closed cosine
//! form, the maximal-violation construction from noncommuting projections,
//! extremal eigenstates, and derivative-free angle optimization.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oplab_alg::states::State;
use oplab_core::mat::{comm, herm_eig, hermitian_part, pauli, CMatrix, C_ZERO};
use oplab_core::tol;

use crate::quad::{bell_operator, chsh_value, AdmissibleQuadruple, BellError, BellOperator};

/// Spin observable along the direction `(cos alpha, 0, sin alpha)`:
/// `cos(alpha) s1 + sin(alpha) s3`. Square is the identity for every angle.
pub fn spin_observable(alpha: f64) -> CMatrix {
    &pauli(1).scale_re(alpha.cos()) + &pauli(3).scale_re(alpha.sin())
}

/// Correlation value of the spin-singlet pair at the four measurement
/// angles, in closed form.
pub fn singlet_closed_form(alpha1: f64, alpha2: f64, beta1: f64, beta2: f64) -> f64 {
    -(alpha1 - beta1).cos() - (alpha1 - beta2).cos() - (alpha2 - beta1).cos()
        + (alpha2 - beta2).cos()
}

fn angle_quadruple(alpha1: f64, alpha2: f64, beta1: f64, beta2: f64) -> AdmissibleQuadruple {
    let i2 = CMatrix::identity(2);
    AdmissibleQuadruple {
        a1: spin_observable(alpha1).kron(&i2),
        a2: spin_observable(alpha2).kron(&i2),
        b1: i2.kron(&spin_observable(beta1)),
        b2: i2.kron(&spin_observable(beta2)),
    }
}

// correlation operator of the angle quadruple, assembled directly
fn angle_correlation(alpha1: f64, alpha2: f64, beta1: f64, beta2: f64) -> CMatrix {
    let q = angle_quadruple(alpha1, alpha2, beta1, beta2);
    let sum = &q.b1 + &q.b2;
    let diff = &q.b1 - &q.b2;
    &(&q.a1 * &sum) + &(&q.a2 * &diff)
}

/// The total-spin-zero pair of two spin halves, measured along four
/// directions in the x-z plane. Returns the quadruple, the state, and the
/// correlation value, which matches `singlet_closed_form` at the same
/// angles.
pub fn singlet_example(
    alpha1: f64,
    alpha2: f64,
    beta1: f64,
    beta2: f64,
) -> (AdmissibleQuadruple, State, f64) {
    let q = angle_quadruple(alpha1, alpha2, beta1, beta2);
    let half = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let psi = vec![C_ZERO, half, -half, C_ZERO];
    let state = State::pure_from_vector(&psi).expect("the defining vector is nonzero");
    let bo = bell_operator(&q).expect("tensor placement keeps the quadruple admissible");
    let value = chsh_value(&state, &bo).expect("state and quadruple share one space");
    (q, state, value)
}

// dichotomic pair with unit squares and commutator norm two, built from a
// genuinely noncommuting pair of projections
fn dichotomic_pair(e: &CMatrix, f: &CMatrix) -> (CMatrix, CMatrix) {
    let n = e.dim();
    let one = CMatrix::identity(n);
    // the corner of f between the range of e and its complement; vanishes
    // exactly when e and f commute
    let t = &(e * f) * &(&one - e);
    let s = t.svd();
    let r = s.rank(tol::RANK_REL);
    let viso = CMatrix::from_fn(n, |i, j| {
        (0..r).map(|k| s.u.at(i, k) * s.v.at(j, k).conj()).sum()
    });
    let vadj = viso.adj();
    let z = &(&vadj * &viso) + &(&viso * &vadj);
    let shift = &z - &one;
    let a1 = &(&viso + &vadj) + &shift;
    let a2 = &(&vadj - &viso).scale(Complex64::new(0.0, 1.0)) + &shift;
    (a1, a2)
}

/// Maximal-violation quadruple from two noncommuting projection pairs, one
/// per tensor factor. The partial isometry extracted from the corner
/// `e f (1 - e)` has orthogonal initial and final spaces, which forces
/// unit squares, commutator norm two, and correlation norm `2 sqrt 2`.
pub fn summers_werner(
    e: &CMatrix,
    f: &CMatrix,
    e2: &CMatrix,
    f2: &CMatrix,
) -> Result<AdmissibleQuadruple, BellError> {
    for (p, q) in [(e, f), (e2, f2)] {
        let commutator_norm = comm(p, q).op_norm();
        if commutator_norm <= tol::NONCOMMUTING_MIN {
            return Err(BellError::CommutingProjections { commutator_norm });
        }
    }
    let (a1, a2) = dichotomic_pair(e, f);
    let (b1, b2) = dichotomic_pair(e2, f2);
    let left = CMatrix::identity(e.dim());
    let right = CMatrix::identity(e2.dim());
    AdmissibleQuadruple::new(
        a1.kron(&right),
        a2.kron(&right),
        left.kron(&b1),
        left.kron(&b2),
    )
}

/// Pure state on the extremal eigenvector of the correlation operator; its
/// value attains the operator norm in absolute value.
pub fn max_violation_state(bo: &BellOperator) -> Result<(State, f64), BellError> {
    let eig = herm_eig(&hermitian_part(bo.matrix()))?;
    let n = bo.dim();
    let (lo, hi) = (eig.values[0], eig.values[n - 1]);
    let idx = if hi.abs() >= lo.abs() { n - 1 } else { 0 };
    let state = State::pure_from_vector(&eig.vectors.col(idx))?;
    let value = chsh_value(&state, bo)?;
    Ok((state, value))
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

// one periodic coordinate: coarse scan over a full period, then
// golden-section refinement around the scan winner; the best angle seen
// wins, so the objective never decreases
fn line_max<F: FnMut(&[f64; 4]) -> f64>(obj: &mut F, angles: &mut [f64; 4], k: usize) {
    const SCAN: usize = 32;
    const REFINE: usize = 60;
    let base = angles[k];
    let step = TAU / SCAN as f64;
    let mut best_theta = base;
    let mut best_v = f64::NEG_INFINITY;
    for t in 0..=SCAN {
        let theta = base - PI + step * t as f64;
        angles[k] = theta;
        let v = obj(angles);
        if v > best_v {
            best_v = v;
            best_theta = theta;
        }
    }
    let mut lo = best_theta - step;
    let mut hi = best_theta + step;
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    angles[k] = x1;
    let mut f1 = obj(angles);
    if f1 > best_v {
        best_v = f1;
        best_theta = x1;
    }
    angles[k] = x2;
    let mut f2 = obj(angles);
    if f2 > best_v {
        best_v = f2;
        best_theta = x2;
    }
    for _ in 0..REFINE {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            angles[k] = x2;
            f2 = obj(angles);
            if f2 > best_v {
                best_v = f2;
                best_theta = x2;
            }
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            angles[k] = x1;
            f1 = obj(angles);
            if f1 > best_v {
                best_v = f1;
                best_theta = x1;
            }
        }
    }
    angles[k] = best_theta;
}

fn ascend<F: FnMut(&[f64; 4]) -> f64>(
    mut obj: F,
    start: [f64; 4],
    sweeps: usize,
    restarts: usize,
    rng: &mut ChaCha8Rng,
) -> ([f64; 4], f64) {
    let mut best_angles = start;
    let mut best_v = obj(&start);
    for round in 0..restarts.max(1) {
        let mut angles = if round == 0 {
            start
        } else {
            [
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
            ]
        };
        for _ in 0..sweeps {
            for k in 0..4 {
                line_max(&mut obj, &mut angles, k);
            }
        }
        let v = obj(&angles);
        if v > best_v {
            best_v = v;
            best_angles = angles;
        }
    }
    (best_angles, best_v)
}

/// Coordinate ascent on the closed cosine form over the four measurement
/// angles, with random restarts. Deterministic for a fixed seed; the
/// returned value is never below the value at the starting angles.
pub fn chsh_optimize(initial: [f64; 4], budget: usize, seed: u64) -> ([f64; 4], f64) {
    assert!(budget >= 1, "optimization budget must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ascend(
        |a| singlet_closed_form(a[0], a[1], a[2], a[3]),
        initial,
        budget,
        8,
        &mut rng,
    )
}

/// Families of quadruples over which the correlation strength of a state
/// is maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrupleFamily {
    /// Only the member a1 = b1 = b2 = 1, a2 = 0, whose half-value is 1 in
    /// every state.
    DegenerateOnly,
    /// Spin observables in the x-z plane on each factor of a two-qubit
    /// space, parametrized by four angles; the degenerate member is always
    /// included.
    TwoQubitAngles,
}

/// Supremum of half the correlation value over a family, as found by the
/// optimizer. Lands in `[1, sqrt 2]` up to tolerance; `in_range` flags the
/// check.
#[derive(Debug, Clone)]
pub struct EbReport {
    pub value: f64,
    pub angles: Option<[f64; 4]>,
    pub in_range: bool,
}

fn in_eb_range(value: f64) -> bool {
    value >= 1.0 - tol::EB_SLACK && value <= SQRT_2 + tol::EB_SLACK
}

pub fn eb_value(
    s: &State,
    family: QuadrupleFamily,
    budget: usize,
    seed: u64,
) -> Result<EbReport, BellError> {
    assert!(budget >= 1, "optimization budget must be positive");
    let degenerate = {
        let n = s.dim();
        let id = CMatrix::identity(n);
        let q = AdmissibleQuadruple::new(id.clone(), CMatrix::zeros(n), id.clone(), id)?;
        let bo = bell_operator(&q)?;
        0.5 * chsh_value(s, &bo)?
    };
    match family {
        QuadrupleFamily::DegenerateOnly => Ok(EbReport {
            value: degenerate,
            angles: None,
            in_range: in_eb_range(degenerate),
        }),
        QuadrupleFamily::TwoQubitAngles => {
            if s.dim() != 4 {
                return Err(BellError::DimMismatch { left: s.dim(), right: 4 });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (angles, found) = ascend(
                |a| {
                    let c = angle_correlation(a[0], a[1], a[2], a[3]);
                    0.5 * s.eval(&c).expect("dimension checked above").re
                },
                [0.0; 4],
                budget,
                8,
                &mut rng,
            );
            let value = degenerate.max(found);
            Ok(EbReport {
                value,
                angles: Some(angles),
                in_range: in_eb_range(value),
            })
        }
    }
}
