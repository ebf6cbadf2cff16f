use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oplab_alg::states::{product_state, State};
use oplab_bell::{
    bell_operator, chsh_optimize, chsh_value, classical_bound, classical_mixture, eb_value,
    max_violation_state, singlet_closed_form, singlet_example, spin_observable, summers_werner,
    validate, AdmissibleQuadruple, BellError, QuadrupleFamily,
};
use oplab_core::mat::{comm, herm_eig, pauli, vec_kron, vec_norm, CMatrix, C_ZERO};
use oplab_core::tol;

const SEED: u64 = 0xBE11_CA5E;

fn rng(extra: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ extra)
}

fn rand_herm(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
        for j in i + 1..n {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    m
}

// Hermitian with operator norm strictly below one
fn rand_contraction(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let h = rand_herm(rng, n);
    let scale = rng.gen_range(0.2..1.0) / h.op_norm().max(1e-6);
    h.scale_re(scale)
}

fn rand_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    herm_eig(&rand_herm(rng, n)).expect("random Hermitian input").vectors
}

fn rand_projection(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> CMatrix {
    let eig = herm_eig(&rand_herm(rng, n)).expect("random Hermitian input");
    let mut p = CMatrix::zeros(n);
    for k in 0..rank {
        let v = eig.vectors.col(k);
        for i in 0..n {
            for j in 0..n {
                p.set(i, j, p.at(i, j) + v[i] * v[j].conj());
            }
        }
    }
    p
}

fn rand_pure(rng: &mut ChaCha8Rng, n: usize) -> State {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    State::pure_from_vector(&v).expect("random vector is nonzero")
}

fn rand_mixed(rng: &mut ChaCha8Rng, n: usize) -> State {
    let g = CMatrix::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let rho = &g * &g.adj();
    let tr = rho.trace().re;
    State::new(rho.scale_re(1.0 / tr)).expect("normalized Gram matrix")
}

// sigma_x, sigma_y on the respective factor: commuting across sides, unit
// squares, commutator norm two on each side
fn pauli_quadruple() -> AdmissibleQuadruple {
    let id = CMatrix::identity(2);
    AdmissibleQuadruple::new(
        pauli(1).kron(&id),
        pauli(2).kron(&id),
        id.kron(&pauli(1)),
        id.kron(&pauli(2)),
    )
    .expect("common dimension four")
}

// unitary conjugates of the Pauli pair on each factor; returns the 2x2
// factor observables alongside the assembled quadruple
fn conjugated_quadruple(rng: &mut ChaCha8Rng) -> ([CMatrix; 4], AdmissibleQuadruple) {
    let id = CMatrix::identity(2);
    let u = rand_unitary(rng, 2);
    let w = rand_unitary(rng, 2);
    let twist = |v: &CMatrix, m: CMatrix| &(v * &m) * &v.adj();
    let factors = [
        twist(&u, pauli(1)),
        twist(&u, pauli(2)),
        twist(&w, pauli(1)),
        twist(&w, pauli(2)),
    ];
    let q = AdmissibleQuadruple::new(
        factors[0].kron(&id),
        factors[1].kron(&id),
        id.kron(&factors[2]),
        id.kron(&factors[3]),
    )
    .expect("common dimension four");
    (factors, q)
}

fn rand_admissible(rng: &mut ChaCha8Rng, da: usize, db: usize) -> AdmissibleQuadruple {
    let left = CMatrix::identity(da);
    let right = CMatrix::identity(db);
    AdmissibleQuadruple::new(
        rand_contraction(rng, da).kron(&right),
        rand_contraction(rng, da).kron(&right),
        left.kron(&rand_contraction(rng, db)),
        left.kron(&rand_contraction(rng, db)),
    )
    .expect("common product dimension")
}

#[test]
fn admissibility_report_accepts_and_flags() {
    let good = pauli_quadruple();
    let report = validate(&good);
    assert!(report.pass);
    for k in 0..4 {
        assert!(report.hermiticity[k] <= tol::QUAD_HERM_ABS);
        assert!((report.norms[k] - 1.0).abs() <= 1e-12);
        assert!(report.commutation[k] <= tol::QUAD_COMM_ABS);
    }

    let id = CMatrix::identity(2);
    let mut loud = good.clone();
    loud.a1 = pauli(1).scale_re(2.0).kron(&id);
    let report = validate(&loud);
    assert!(!report.pass);
    assert!((report.norms[0] - 2.0).abs() <= 1e-12);

    // b1 acting on the same factor as a1 breaks cross commutation
    let mut tangled = good.clone();
    tangled.b1 = pauli(2).kron(&id);
    let report = validate(&tangled);
    assert!(!report.pass);
    assert!((report.commutation[0] - 2.0).abs() <= 1e-12);

    let mut skew = good;
    skew.a1 = CMatrix::from_fn(4, |i, j| {
        if i == 0 && j == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            C_ZERO
        }
    });
    let report = validate(&skew);
    assert!(!report.pass);
    assert!((report.hermiticity[0] - 1.0).abs() <= 1e-12);
}

#[test]
fn correlation_operator_of_the_identity_quadruple() {
    let id = CMatrix::identity(4);
    let q = AdmissibleQuadruple::new(id.clone(), id.clone(), id.clone(), id).expect("one space");
    let bo = bell_operator(&q).expect("identity quadruple is admissible");
    let twice = CMatrix::identity(4).scale_re(2.0);
    assert!((bo.matrix() - &twice).op_norm() <= 1e-14);
    assert_eq!(bo.dim(), 4);

    let mut seeded = rng(1);
    let s = rand_mixed(&mut seeded, 4);
    let v = chsh_value(&s, &bo).expect("matching dimensions");
    assert!((v - 2.0).abs() <= 1e-12);
}

#[test]
fn inadmissible_quadruples_are_rejected() {
    let id = CMatrix::identity(2);
    let mut q = pauli_quadruple();
    q.a1 = pauli(1).scale_re(2.0).kron(&id);
    match bell_operator(&q) {
        Err(BellError::InvalidQuadruple { report }) => {
            assert!(!report.pass);
            assert!(report.norms[0] > 1.0 + tol::QUAD_NORM_SLACK);
        }
        other => panic!("expected an admissibility rejection, got {other:?}"),
    }

    let bad = AdmissibleQuadruple::new(
        CMatrix::identity(2),
        CMatrix::identity(2),
        CMatrix::identity(2),
        CMatrix::identity(4),
    );
    assert!(matches!(bad, Err(BellError::DimMismatch { left: 4, right: 2 })));
}

#[test]
fn square_and_norm_identities_for_unit_square_quadruples() {
    let mut seeded = rng(2);
    for trial in 0..20 {
        let (_, q) = conjugated_quadruple(&mut seeded);
        let bo = bell_operator(&q).expect("conjugated quadruple is admissible");
        let c = bo.matrix();

        // reconstruction from the stored source
        let src = bo.source();
        let rebuilt = &(&src.a1 * &(&src.b1 + &src.b2)) + &(&src.a2 * &(&src.b1 - &src.b2));
        assert!((c - &rebuilt).op_norm() <= tol::BELL_RECON_ABS);
        assert!((&c.adj() - c).op_norm() <= 4.0 * tol::QUAD_COMM_ABS);

        let lhs = c * c;
        let four = CMatrix::identity(q.dim()).scale_re(4.0);
        let cross = &comm(&q.a1, &q.a2) * &comm(&q.b1, &q.b2);
        let rhs = &four - &cross;
        assert!(
            (&lhs - &rhs).op_norm() <= tol::SQUARE_ID_ABS,
            "square identity failed on trial {trial}"
        );

        let norm_sq = c.op_norm().powi(2);
        assert!((norm_sq - (4.0 + cross.op_norm())).abs() <= tol::NORM_SQ_ID_ABS);
    }

    let bo = bell_operator(&pauli_quadruple()).expect("admissible");
    assert!((bo.matrix().op_norm() - 2.0 * SQRT_2).abs() <= 1e-9);
}

#[test]
fn operator_norm_respects_the_quantum_bound() {
    let mut seeded = rng(3);
    let dims = [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2)];
    for trial in 0..500 {
        let (da, db) = dims[trial % dims.len()];
        let q = rand_admissible(&mut seeded, da, db);
        let bo = bell_operator(&q).expect("scaled contractions are admissible");
        let norm = bo.matrix().op_norm();
        assert!(
            norm <= 2.0 * SQRT_2 + tol::TSIRELSON_SLACK,
            "norm {norm} exceeds the quantum bound on trial {trial}"
        );
    }
}

#[test]
fn expectation_values_respect_the_quantum_bound() {
    let mut seeded = rng(4);
    let dims = [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (4, 4)];
    let bound = 2.0 * SQRT_2 + tol::TSIRELSON_SLACK;
    for trial in 0..500 {
        let (da, db) = dims[trial % dims.len()];
        let q = rand_admissible(&mut seeded, da, db);
        let bo = bell_operator(&q).expect("scaled contractions are admissible");
        let norm = bo.matrix().op_norm();
        let square = bo.matrix() * bo.matrix();
        for k in 0..20 {
            let s = if k % 2 == 0 {
                rand_pure(&mut seeded, da * db)
            } else {
                rand_mixed(&mut seeded, da * db)
            };
            let v = chsh_value(&s, &bo).expect("matching dimensions");
            assert!(v.abs() <= bound);
            assert!(v.abs() <= norm + 1e-10);
            let second_moment = s.eval(&square).expect("matching dimensions").re;
            assert!(v.powi(2) <= second_moment + 1e-9);
        }
    }
}

#[test]
fn expectation_checks_dimensions() {
    let bo = bell_operator(&pauli_quadruple()).expect("admissible");
    let mut seeded = rng(5);
    let s = rand_mixed(&mut seeded, 2);
    assert!(matches!(
        chsh_value(&s, &bo),
        Err(BellError::DimMismatch { left: 2, right: 4 })
    ));
}

#[test]
fn spin_observables_interpolate_between_two_axes() {
    assert!((&spin_observable(0.0) - &pauli(1)).op_norm() <= 1e-15);
    assert!((&spin_observable(FRAC_PI_2) - &pauli(3)).op_norm() <= 1e-15);
    let id = CMatrix::identity(2);
    let mut seeded = rng(13);
    for _ in 0..10 {
        let m = spin_observable(seeded.gen_range(-PI..PI));
        assert!((&m.adj() - &m).op_norm() <= 1e-15);
        assert!((&(&m * &m) - &id).op_norm() <= 1e-14);
    }
}

#[test]
fn singlet_matches_the_closed_cosine_form() {
    let (q, s, v) = singlet_example(0.0, FRAC_PI_4, PI, FRAC_PI_2);
    assert!(validate(&q).pass);
    assert!(s.is_pure());
    assert_eq!(s.dim(), 4);
    assert!((v - (1.0 + SQRT_2)).abs() <= tol::SINGLET_CLOSED_FORM_ABS);
    let closed = singlet_closed_form(0.0, FRAC_PI_4, PI, FRAC_PI_2);
    assert!((v - closed).abs() <= tol::SINGLET_CLOSED_FORM_ABS);

    let (_, _, flat) = singlet_example(0.7, 0.7, 0.7, 0.7);
    assert!((flat - (-2.0)).abs() <= tol::SINGLET_CLOSED_FORM_ABS);

    let mut seeded = rng(6);
    for _ in 0..20 {
        let a: [f64; 4] = [
            seeded.gen_range(-PI..PI),
            seeded.gen_range(-PI..PI),
            seeded.gen_range(-PI..PI),
            seeded.gen_range(-PI..PI),
        ];
        let (_, _, matrix_value) = singlet_example(a[0], a[1], a[2], a[3]);
        let closed = singlet_closed_form(a[0], a[1], a[2], a[3]);
        assert!((matrix_value - closed).abs() <= tol::SINGLET_CLOSED_FORM_ABS);
    }
}

#[test]
fn singlet_state_has_total_spin_zero() {
    let (_, s, _) = singlet_example(0.3, 0.9, 1.2, 2.1);
    let half = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let psi = [C_ZERO, half, -half, C_ZERO];
    for i in 0..4 {
        for j in 0..4 {
            assert!((s.rho().at(i, j) - psi[i] * psi[j].conj()).norm() <= 1e-12);
        }
    }
    let id = CMatrix::identity(2);
    for k in 1..=3 {
        let total = &pauli(k).kron(&id) + &id.kron(&pauli(k));
        assert!(vec_norm(&total.apply(&psi)) <= 1e-14);
    }
}

#[test]
fn singlet_maximum_matches_a_grid_oracle() {
    const STEPS: usize = 20;
    let mut grid_best = f64::NEG_INFINITY;
    let mut grid_angles = [0.0; 4];
    for i in 0..STEPS {
        for j in 0..STEPS {
            for k in 0..STEPS {
                for l in 0..STEPS {
                    let a = [
                        TAU * i as f64 / STEPS as f64,
                        TAU * j as f64 / STEPS as f64,
                        TAU * k as f64 / STEPS as f64,
                        TAU * l as f64 / STEPS as f64,
                    ];
                    let v = singlet_closed_form(a[0], a[1], a[2], a[3]);
                    if v > grid_best {
                        grid_best = v;
                        grid_angles = a;
                    }
                }
            }
        }
    }
    assert!(grid_best <= 2.0 * SQRT_2 + 1e-9);
    assert!(grid_best >= 2.7);

    let (_, refined) = chsh_optimize(grid_angles, 3, SEED);
    assert!(refined >= grid_best);
    assert!((refined - 2.0 * SQRT_2).abs() <= tol::OPT_ABS);
}

#[test]
fn optimizer_converges_from_pinned_starts() {
    let (angles, value) = chsh_optimize([0.0, FRAC_PI_4, PI, FRAC_PI_2], 4, SEED);
    assert!((value - 2.0 * SQRT_2).abs() <= tol::OPT_ABS);
    let replay = singlet_closed_form(angles[0], angles[1], angles[2], angles[3]);
    assert!((replay - value).abs() <= 1e-12);

    // a known maximum is a fixed point up to tolerance
    let top = [0.0, FRAC_PI_2, PI + FRAC_PI_4, 3.0 * FRAC_PI_4];
    let at_top = singlet_closed_form(top[0], top[1], top[2], top[3]);
    assert!((at_top - 2.0 * SQRT_2).abs() <= 1e-12);
    let (_, from_top) = chsh_optimize(top, 1, SEED);
    assert!(from_top >= at_top);
    assert!((from_top - 2.0 * SQRT_2).abs() <= tol::OPT_ABS);

    // never below the starting value
    let mut seeded = rng(7);
    for _ in 0..10 {
        let start = [
            seeded.gen_range(-PI..PI),
            seeded.gen_range(-PI..PI),
            seeded.gen_range(-PI..PI),
            seeded.gen_range(-PI..PI),
        ];
        let initial = singlet_closed_form(start[0], start[1], start[2], start[3]);
        let (_, value) = chsh_optimize(start, 1, SEED ^ 0x77);
        assert!(value >= initial - 1e-12);
    }
}

#[test]
fn optimizer_escapes_the_degenerate_start() {
    let (_, value) = chsh_optimize([1.0; 4], 4, SEED);
    assert!(value >= 2.8);
    assert!(value <= 2.0 * SQRT_2 + 1e-12);
}

#[test]
fn optimizer_reaches_the_maximum_from_random_starts() {
    let mut seeded = rng(8);
    let mut hits = 0;
    for trial in 0..50 {
        let start = [
            seeded.gen_range(-PI..PI),
            seeded.gen_range(-PI..PI),
            seeded.gen_range(-PI..PI),
            seeded.gen_range(-PI..PI),
        ];
        let (_, value) = chsh_optimize(start, 3, SEED.wrapping_add(trial));
        if (value - 2.0 * SQRT_2).abs() <= tol::OPT_ABS {
            hits += 1;
        }
    }
    assert!(hits >= 45, "only {hits}/50 starts reached the maximum");
}

#[test]
fn classical_bounds_are_exact() {
    assert_eq!(classical_bound(), (2.0, -2.0));

    let mut point = [0.0; 16];
    point[15] = 1.0;
    let v = classical_mixture(&point).expect("valid point mass");
    assert_eq!(v, 2.0);

    let uniform = [1.0 / 16.0; 16];
    let v = classical_mixture(&uniform).expect("valid uniform weights");
    assert!(v.abs() <= 1e-15);

    let mut seeded = rng(9);
    for _ in 0..20 {
        let mut w: Vec<f64> = (0..16).map(|_| seeded.gen_range(0.0..1.0)).collect();
        let total: f64 = w.iter().sum();
        for x in &mut w {
            *x /= total;
        }
        let v = classical_mixture(&w).expect("normalized weights");
        assert!(v.abs() <= 2.0 + 1e-12);
    }

    assert!(matches!(
        classical_mixture(&[1.0; 4]),
        Err(BellError::BadWeights { .. })
    ));
    let mut negative = [1.0 / 14.0; 16];
    negative[0] = -1.0 / 14.0;
    assert!(matches!(
        classical_mixture(&negative),
        Err(BellError::BadWeights { .. })
    ));
    let mut short = [1.0 / 16.0; 16];
    short[3] = 0.0;
    assert!(matches!(
        classical_mixture(&short),
        Err(BellError::BadWeights { .. })
    ));
    let mut sour = [1.0 / 16.0; 16];
    sour[3] = f64::NAN;
    assert!(matches!(
        classical_mixture(&sour),
        Err(BellError::BadWeights { .. })
    ));
}

#[test]
fn noncommuting_projections_yield_maximal_violation() {
    // the worked two-dimensional pair pins the whole construction
    let e = CMatrix::diag(&[Complex64::new(1.0, 0.0), C_ZERO]);
    let f = CMatrix::from_fn(2, |_, _| Complex64::new(0.5, 0.0));
    let q = summers_werner(&e, &f, &e, &f).expect("noncommuting pair");
    let id = CMatrix::identity(2);
    assert!((&q.a1 - &pauli(1).kron(&id)).op_norm() <= 1e-12);
    assert!((&q.a2 - &pauli(2).kron(&id)).op_norm() <= 1e-12);
    assert!((&q.b1 - &id.kron(&pauli(1))).op_norm() <= 1e-12);
    assert!((&q.b2 - &id.kron(&pauli(2))).op_norm() <= 1e-12);

    let mut seeded = rng(10);
    let mut checked = 0;
    while checked < 8 {
        let n = 3 + checked % 2;
        let e = rand_projection(&mut seeded, n, 1 + checked % 2);
        let f = rand_projection(&mut seeded, n, 1);
        let e2 = rand_projection(&mut seeded, n, 1);
        let f2 = rand_projection(&mut seeded, n, 1 + checked % 2);
        if comm(&e, &f).op_norm() <= 0.1 || comm(&e2, &f2).op_norm() <= 0.1 {
            continue;
        }
        checked += 1;
        let q = summers_werner(&e, &f, &e2, &f2).expect("noncommuting pairs");
        assert!(validate(&q).pass);
        let dim = q.dim();
        let one = CMatrix::identity(dim);
        for side in [&q.a1, &q.a2, &q.b1, &q.b2] {
            assert!((&(side * side) - &one).op_norm() <= tol::MAXVIOL_CONSTRUCT_ABS);
        }
        assert!((comm(&q.a1, &q.a2).op_norm() - 2.0).abs() <= tol::MAXVIOL_CONSTRUCT_ABS);
        assert!((comm(&q.b1, &q.b2).op_norm() - 2.0).abs() <= tol::MAXVIOL_CONSTRUCT_ABS);
        let bo = bell_operator(&q).expect("construction output is admissible");
        assert!((bo.matrix().op_norm() - 2.0 * SQRT_2).abs() <= tol::MAXVIOL_CONSTRUCT_ABS);
    }
}

#[test]
fn commuting_projections_are_rejected() {
    let e = CMatrix::diag(&[Complex64::new(1.0, 0.0), C_ZERO]);
    let f = CMatrix::diag(&[C_ZERO, Complex64::new(1.0, 0.0)]);
    let noncommuting = CMatrix::from_fn(2, |_, _| Complex64::new(0.5, 0.0));
    match summers_werner(&e, &f, &e, &noncommuting) {
        Err(BellError::CommutingProjections { commutator_norm }) => {
            assert!(commutator_norm <= 1e-14);
        }
        other => panic!("expected a commuting rejection, got {other:?}"),
    }
    // the gate also covers the second side
    assert!(matches!(
        summers_werner(&e, &noncommuting, &e, &e),
        Err(BellError::CommutingProjections { .. })
    ));
}

#[test]
fn extremal_state_attains_the_operator_norm() {
    let e = CMatrix::diag(&[Complex64::new(1.0, 0.0), C_ZERO]);
    let f = CMatrix::from_fn(2, |_, _| Complex64::new(0.5, 0.0));
    let q = summers_werner(&e, &f, &e, &f).expect("noncommuting pair");
    let bo = bell_operator(&q).expect("construction output is admissible");
    let (s, v) = max_violation_state(&bo).expect("eigendecomposition succeeds");
    assert!(s.is_pure());
    assert!((v - 2.0 * SQRT_2).abs() <= tol::MAXVIOL_STATE_ABS);
    let replay = chsh_value(&s, &bo).expect("matching dimensions");
    assert!((replay - v).abs() <= 1e-14);

    let id = CMatrix::identity(4);
    let flat =
        AdmissibleQuadruple::new(id.clone(), id.clone(), id.clone(), id).expect("one space");
    let bo = bell_operator(&flat).expect("admissible");
    let (_, v) = max_violation_state(&bo).expect("eigendecomposition succeeds");
    assert!((v - 2.0).abs() <= 1e-12);

    let (q, _, _) = singlet_example(0.0, FRAC_PI_4, PI, FRAC_PI_2);
    let bo = bell_operator(&q).expect("admissible");
    let (_, v) = max_violation_state(&bo).expect("eigendecomposition succeeds");
    assert!(v.abs() >= 1.0 + SQRT_2 - 1e-12);
    assert!((v.abs() - bo.matrix().op_norm()).abs() <= tol::MAXVIOL_STATE_ABS);
}

#[test]
fn product_states_obey_the_classical_bound() {
    let mut seeded = rng(11);
    for trial in 0..50 {
        let (factors, q) = conjugated_quadruple(&mut seeded);
        let bo = bell_operator(&q).expect("conjugated quadruple is admissible");
        let (sa, sb) = if trial % 2 == 0 {
            (rand_pure(&mut seeded, 2), rand_pure(&mut seeded, 2))
        } else {
            (rand_mixed(&mut seeded, 2), rand_mixed(&mut seeded, 2))
        };
        let s = product_state(&sa, &sb);
        let v = chsh_value(&s, &bo).expect("matching dimensions");

        // correlations of a product state factorize side by side
        let a1 = sa.eval(&factors[0]).expect("factor dims").re;
        let a2 = sa.eval(&factors[1]).expect("factor dims").re;
        let b1 = sb.eval(&factors[2]).expect("factor dims").re;
        let b2 = sb.eval(&factors[3]).expect("factor dims").re;
        let factorized = a1 * (b1 + b2) + a2 * (b1 - b2);
        assert!((v - factorized).abs() <= 1e-10);
        assert!(v.abs() <= 2.0 + 1e-9, "separable value {v} on trial {trial}");
    }
}

#[test]
fn family_supremum_stays_in_the_unit_band() {
    let mut seeded = rng(12);
    let any = rand_mixed(&mut seeded, 5);
    let report = eb_value(&any, QuadrupleFamily::DegenerateOnly, 1, SEED).expect("always defined");
    assert!((report.value - 1.0).abs() <= 1e-12);
    assert!(report.angles.is_none());
    assert!(report.in_range);

    let e0 = [Complex64::new(1.0, 0.0), C_ZERO];
    let product = State::pure_from_vector(&vec_kron(&e0, &e0)).expect("unit vector");
    let report =
        eb_value(&product, QuadrupleFamily::TwoQubitAngles, 3, SEED).expect("two-qubit state");
    assert!((report.value - 1.0).abs() <= 1e-6);
    assert!(report.angles.is_some());
    assert!(report.in_range);

    let (_, singlet, _) = singlet_example(0.0, FRAC_PI_4, PI, FRAC_PI_2);
    let report =
        eb_value(&singlet, QuadrupleFamily::TwoQubitAngles, 4, SEED).expect("two-qubit state");
    assert!((report.value - SQRT_2).abs() <= 1e-6);
    assert!(report.in_range);

    let small = rand_mixed(&mut seeded, 2);
    assert!(matches!(
        eb_value(&small, QuadrupleFamily::TwoQubitAngles, 1, SEED),
        Err(BellError::DimMismatch { left: 2, right: 4 })
    ));

    // random two-qubit states stay inside the band
    for _ in 0..4 {
        let s = rand_mixed(&mut seeded, 4);
        let report =
            eb_value(&s, QuadrupleFamily::TwoQubitAngles, 2, SEED).expect("two-qubit state");
        assert!(report.in_range, "family supremum {} out of band", report.value);
    }
}
