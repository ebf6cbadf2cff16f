//! Check runners shared by the subcommands and the acceptance suite.
//! Every runner draws seeded instances, drives one library layer, and
//! returns worst-case residuals; callers attach names, anchors, and
//! thresholds. All residuals are maxima over the sampled instances, so a
//! single bad draw fails the whole check.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use oplab_core::mat::{comm, hermitian_part, CMatrix};
use oplab_core::spectra::{
    functional_calculus, pos_neg_parts, spectral_radius_gelfand, spectrum, sqrt_positive,
    SqrtMethod,
};

use oplab_alg::algebra::generate;
use oplab_alg::modular::{kms_check, purify, tomita, verify_tomita_takesaki};
use oplab_alg::states::{gns, gns_irreducible, State};

use oplab_bell::{
    bell_operator, chsh_optimize, chsh_value, classical_bound, max_violation_state,
    singlet_closed_form, singlet_example, summers_werner, AdmissibleQuadruple,
};

use oplab_fock::{car_check, ccr_residual, vacuum_weyl, FockSpace};

use oplab_net::{
    check_causality, check_isotony, chsh_transport, embed, independence_product, parseval_defect,
    pauli_string, pullback, CausalSite, Region, SiteEmbedding,
};

use crate::sample::{
    rand_c, rand_contraction, rand_faithful, rand_herm, rand_mat, rand_mixed, rand_projection,
    rand_psd, rand_pure, rand_unitary, rng,
};

const TWO_SQRT_2: f64 = 2.0 * SQRT_2;

fn max_f(acc: f64, x: f64) -> f64 {
    if x > acc {
        x
    } else {
        acc
    }
}

/// Largest distance in a greedy nearest-neighbor matching of two
/// eigenvalue multisets. Both inputs come sorted from the solver, so the
/// greedy pairing is stable for the well-separated spectra drawn here.
fn multiset_distance(xs: &[Complex64], ys: &[Complex64]) -> f64 {
    if xs.len() != ys.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; ys.len()];
    let mut worst = 0.0f64;
    for x in xs {
        let mut best = f64::INFINITY;
        let mut best_j = 0;
        for (j, y) in ys.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (x - y).norm();
            if d < best {
                best = d;
                best_j = j;
            }
        }
        used[best_j] = true;
        worst = max_f(worst, best);
    }
    worst
}

fn horner_matrix(m: &CMatrix, coeffs: &[Complex64]) -> CMatrix {
    let id = CMatrix::identity(m.dim());
    let mut acc = id.scale(coeffs[coeffs.len() - 1]);
    for &c in coeffs.iter().rev().skip(1) {
        acc = &(&acc * m) + &id.scale(c);
    }
    acc
}

fn horner_scalar(z: Complex64, coeffs: &[Complex64]) -> Complex64 {
    let mut acc = coeffs[coeffs.len() - 1];
    for &c in coeffs.iter().rev().skip(1) {
        acc = acc * z + c;
    }
    acc
}

fn cycle_dim(t: usize, dim_max: usize) -> usize {
    2 + t % (dim_max - 1)
}

// ── eigenvalue layer ────────────────────────────────────────────────────

pub struct SpectraResiduals {
    pub mapping: f64,
    pub gelfand: f64,
    pub sqrt_agree: f64,
    pub posneg: f64,
}

pub fn spectra_residuals(
    trials: usize,
    dim_max: usize,
    extra: Option<&CMatrix>,
    seed: u64,
) -> SpectraResiduals {
    let r = &mut rng(seed, 0x51);

    let mut mapping = 0.0f64;
    let mut polynomial_instance = |r: &mut ChaCha8Rng, t: usize, m: &CMatrix| {
        let deg = 1 + t % 4;
        let coeffs: Vec<Complex64> = (0..=deg).map(|_| rand_c(r)).collect();
        let pm = horner_matrix(m, &coeffs);
        let mapped: Vec<Complex64> = spectrum(m)
            .values
            .iter()
            .map(|&z| horner_scalar(z, &coeffs))
            .collect();
        let dist = multiset_distance(&mapped, &spectrum(&pm).values);
        dist / pm.op_norm().max(1.0)
    };
    if let Some(m) = extra {
        mapping = max_f(mapping, polynomial_instance(r, 0, m));
    }
    for t in 0..trials {
        let m = rand_mat(r, cycle_dim(t, dim_max)).scale_re(0.8);
        mapping = max_f(mapping, polynomial_instance(r, t, &m));
    }

    let mut gelfand = 0.0f64;
    for t in 0..trials {
        let n = cycle_dim(t, dim_max);
        // normal instances: the limit formula converges fast only when
        // norm powers track the radius exactly
        let m = if t % 2 == 0 {
            rand_herm(r, n)
        } else {
            let u = rand_unitary(r, n);
            let d = CMatrix::diag(&(0..n).map(|_| rand_c(r).scale(1.5)).collect::<Vec<_>>());
            &(&u * &d) * &u.adj()
        };
        let want = spectrum(&m).radius();
        let got = spectral_radius_gelfand(&m, 40);
        gelfand = max_f(gelfand, (got - want).abs() / want.max(1.0));
    }

    let mut sqrt_agree = 0.0f64;
    for t in 0..trials {
        let a = rand_psd(r, cycle_dim(t, dim_max), 0.2, 2.0);
        let b_eig = sqrt_positive(&a, SqrtMethod::Eigen)
            .expect("spectrum bounded inside (0, 2] admits both square-root paths");
        let b_ser = sqrt_positive(&a, SqrtMethod::Series)
            .expect("spectrum bounded inside (0, 2] admits both square-root paths");
        sqrt_agree = max_f(sqrt_agree, (&b_eig - &b_ser).op_norm() / a.op_norm().sqrt());
    }

    let mut posneg = 0.0f64;
    for t in 0..trials {
        let a = rand_herm(r, cycle_dim(t, dim_max));
        let (plus, minus) = pos_neg_parts(&a).expect("hermitian input splits");
        let scale = a.op_norm().max(1.0).powi(2);
        posneg = max_f(posneg, (&plus * &minus).op_norm() / scale);
    }

    SpectraResiduals { mapping, gelfand, sqrt_agree, posneg }
}

// ── representation layer ────────────────────────────────────────────────

pub struct GnsResiduals {
    pub expectation: f64,
    pub purity_mismatches: usize,
}

pub fn gns_residuals(
    trials: usize,
    ops_per_state: usize,
    dims: &[usize],
    seed: u64,
) -> GnsResiduals {
    let r = &mut rng(seed, 0x62);
    let mut expectation = 0.0f64;
    let mut purity_mismatches = 0usize;
    for t in 0..trials {
        let n = dims[t % dims.len()];
        let s = if t % 2 == 0 { rand_pure(r, n) } else { rand_mixed(r, n) };
        let triple = gns(&s);
        for _ in 0..ops_per_state {
            let a = rand_mat(r, n);
            let got = triple
                .vector_expectation(&a)
                .expect("observable dimension matches the ambient algebra");
            let want = s.eval(&a).expect("observable dimension matches the state");
            expectation = max_f(expectation, (got - want).norm());
        }
        if gns_irreducible(&triple) != s.is_pure() {
            purity_mismatches += 1;
        }
    }
    GnsResiduals { expectation, purity_mismatches }
}

pub struct CommutantResiduals {
    pub double: f64,
    pub triple: f64,
}

pub fn commutant_residuals(sets: usize, dim_max: usize, seed: u64) -> CommutantResiduals {
    let r = &mut rng(seed, 0x6C);
    let mut double = 0.0f64;
    let mut triple = 0.0f64;
    for t in 0..sets {
        let n = cycle_dim(t, dim_max);
        let gens: Vec<CMatrix> = match t % 3 {
            0 => vec![rand_mat(r, n)],
            1 => vec![rand_herm(r, n)],
            _ => vec![rand_mat(r, n), rand_mat(r, n)],
        };
        let m = generate(n, &gens).expect("random generators span without conditioning issues");
        let c1 = m.commutant();
        let c2 = c1.commutant();
        double = max_f(double, m.span_distance(&c2));
        triple = max_f(triple, c1.span_distance(&c2.commutant()));
    }
    CommutantResiduals { double, triple }
}

// ── modular layer ───────────────────────────────────────────────────────

pub struct ModularResiduals {
    pub identities: f64,
    pub conj_span: f64,
    pub flow_span: f64,
    pub ratio: f64,
}

pub fn modular_residuals(purifications: usize, dims: &[usize], seed: u64) -> ModularResiduals {
    let r = &mut rng(seed, 0x7D);
    let mut identities = 0.0f64;
    let mut conj_span = 0.0f64;
    let mut flow_span = 0.0f64;
    let mut ratio = 0.0f64;
    for t in 0..purifications {
        let n = dims[t % dims.len()];
        let s = rand_faithful(r, n);
        let (m, omega) = purify(&s);
        let d = tomita(&m, &omega).expect("faithful states purify to cyclic separating vectors");
        let rep = verify_tomita_takesaki(&d);
        identities = [
            rep.j_squared,
            rep.j_selfadjoint,
            rep.j_fixes_omega,
            rep.delta_fixes_omega,
            rep.half_power_conj,
        ]
        .into_iter()
        .fold(identities, max_f);
        conj_span = max_f(conj_span, rep.conj_span);
        flow_span = rep.flow_span.iter().map(|&(_, res)| res).fold(flow_span, max_f);

        // the positive operator of the purification has spectrum exactly
        // the eigenvalue ratios of the density matrix
        let evs = s.eigenvalues();
        let mut ratios: Vec<f64> = Vec::with_capacity(n * n);
        for &num in evs {
            for &den in evs {
                ratios.push(num / den);
            }
        }
        ratios.sort_by(|a, b| a.partial_cmp(b).expect("ratios of positive eigenvalues"));
        let spec = d.delta_spectrum();
        let worst = ratios
            .iter()
            .zip(spec.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, max_f);
        ratio = max_f(ratio, worst);
    }
    ModularResiduals { identities, conj_span, flow_span, ratio }
}

fn algebra_combo(r: &mut ChaCha8Rng, basis: &[CMatrix]) -> CMatrix {
    let mut acc = CMatrix::zeros(basis[0].dim());
    for b in basis {
        acc = &acc + &b.scale(rand_c(r));
    }
    acc
}

pub fn kms_residual(states: usize, pairs_per_state: usize, dims: &[usize], seed: u64) -> f64 {
    let r = &mut rng(seed, 0x88);
    let mut worst = 0.0f64;
    for t in 0..states {
        let n = dims[t % dims.len()];
        let h = rand_herm(r, n);
        let boltzmann = functional_calculus(&h, |l| Complex64::new((-l).exp(), 0.0))
            .expect("hermitian generator exponentiates");
        let z = boltzmann.trace().re;
        let s = State::new(boltzmann.scale_re(1.0 / z))
            .expect("normalized exponential of a hermitian matrix is a state");
        let (m, omega) = purify(&s);
        let d = tomita(&m, &omega).expect("thermal states are faithful");
        let basis = d.algebra().basis().to_vec();
        for _ in 0..pairs_per_state {
            let a = algebra_combo(r, &basis);
            let b = algebra_combo(r, &basis);
            worst = max_f(worst, kms_check(&d, &a, &b));
        }
    }
    worst
}

// ── correlation layer ───────────────────────────────────────────────────

pub fn singlet_outcome(angles: [f64; 4]) -> (f64, f64) {
    let [a1, a2, b1, b2] = angles;
    let (_, _, value) = singlet_example(a1, a2, b1, b2);
    let residual = (value - singlet_closed_form(a1, a2, b1, b2)).abs();
    (value, residual)
}

/// Worst overshoot of the correlation operator norm above `2 sqrt 2`
/// over randomly drawn admissible quadruples.
pub fn tsirelson_excess(samples: usize, seed: u64) -> f64 {
    let r = &mut rng(seed, 0x95);
    let dims = [(2usize, 2usize), (2, 3), (3, 2), (3, 3)];
    let mut excess = 0.0f64;
    for t in 0..samples {
        let (da, db) = dims[t % dims.len()];
        let ida = CMatrix::identity(da);
        let idb = CMatrix::identity(db);
        let a1 = rand_contraction(r, da);
        let a2 = rand_contraction(r, da);
        let b1 = rand_contraction(r, db);
        let b2 = rand_contraction(r, db);
        let q = AdmissibleQuadruple::new(
            a1.kron(&idb),
            a2.kron(&idb),
            ida.kron(&b1),
            ida.kron(&b2),
        )
        .expect("tensor placement matches dimensions");
        let bo = bell_operator(&q).expect("commuting placement is admissible");
        excess = max_f(excess, bo.matrix().op_norm() - TWO_SQRT_2);
    }
    excess.max(0.0)
}

pub fn classical_residual() -> (f64, f64) {
    let (upper, lower) = classical_bound();
    (upper, (upper - 2.0).abs() + (lower + 2.0).abs())
}

fn noncommuting_projections(r: &mut ChaCha8Rng, n: usize) -> (CMatrix, CMatrix) {
    loop {
        let rank = 1 + (n > 3) as usize;
        let e = rand_projection(r, n, 1);
        let f = rand_projection(r, n, rank);
        if comm(&e, &f).op_norm() > 0.1 {
            return (e, f);
        }
    }
}

pub struct ConstructionOutcome {
    /// worst defect over unit squares and commutator norms of both sides
    pub dichotomic_defect: f64,
    pub norm_value: f64,
    /// worst deviation of the correlation operator norm from `2 sqrt 2`
    pub norm_residual: f64,
    /// worst gap between the extremal state's value and the operator norm
    pub state_residual: f64,
}

pub fn construction_outcome(pairs: usize, seed: u64) -> ConstructionOutcome {
    let r = &mut rng(seed, 0xA3);
    let mut dichotomic_defect = 0.0f64;
    let mut norm_value = 0.0f64;
    let mut norm_residual = 0.0f64;
    let mut state_residual = 0.0f64;
    for t in 0..pairs {
        let na = 2 + t % 3;
        let nb = 2 + (t / 3) % 3;
        let (e, f) = noncommuting_projections(r, na);
        let (e2, f2) = noncommuting_projections(r, nb);
        let q = summers_werner(&e, &f, &e2, &f2)
            .expect("rejection sampling guarantees noncommuting pairs");
        let dim = q.dim();
        let one = CMatrix::identity(dim);
        for (x, y) in [(&q.a1, &q.a2), (&q.b1, &q.b2)] {
            dichotomic_defect = max_f(dichotomic_defect, (&(x * x) - &one).op_norm());
            dichotomic_defect = max_f(dichotomic_defect, (&(y * y) - &one).op_norm());
            dichotomic_defect = max_f(dichotomic_defect, (comm(x, y).op_norm() - 2.0).abs());
        }
        let bo = bell_operator(&q).expect("construction output is admissible");
        let norm = bo.matrix().op_norm();
        norm_value = norm;
        norm_residual = max_f(norm_residual, (norm - TWO_SQRT_2).abs());
        let (_, value) = max_violation_state(&bo).expect("operator is hermitian");
        state_residual = max_f(state_residual, (value.abs() - norm).abs());
    }
    ConstructionOutcome { dichotomic_defect, norm_value, norm_residual, state_residual }
}

pub fn optimizer_outcome(budget: usize, seed: u64) -> (f64, f64) {
    let (_, best) = chsh_optimize([0.0; 4], budget, seed);
    (best, (best - TWO_SQRT_2).abs())
}

// ── occupation-number layer ─────────────────────────────────────────────

pub struct GaussianOutcome {
    pub value: f64,
    pub residual: f64,
    /// worst increase of the truncation error along the cap grid
    pub monotone_violation: f64,
}

pub fn gaussian_outcome(modes: usize, cap: usize, caps: &[usize], f: &[Complex64]) -> GaussianOutcome {
    let norm_sq: f64 = f.iter().map(|z| z.norm_sqr()).sum();
    let want = (-norm_sq / 4.0).exp();
    let eval = |c: usize| -> (f64, f64) {
        let space = FockSpace::bose(modes, c).expect("dimension and cap are pre-validated");
        let got = vacuum_weyl(&space, f).expect("argument length matches the space");
        (got.re, (got - Complex64::new(want, 0.0)).norm())
    };
    let (value, residual) = eval(cap);
    let errors: Vec<f64> = caps.iter().map(|&c| eval(c).1).collect();
    let mut monotone_violation = 0.0f64;
    for w in errors.windows(2) {
        let floor = w[0].max(oplab_core::tol::CONVERGENCE_FLOOR);
        monotone_violation = max_f(monotone_violation, (w[1] - floor).max(0.0));
    }
    GaussianOutcome { value, residual, monotone_violation }
}

pub fn ccr_worst(pairs_per_space: usize, seed: u64) -> f64 {
    let r = &mut rng(seed, 0xB7);
    let mut worst = 0.0f64;
    for (d, cap) in [(1usize, 10usize), (2, 5), (3, 3)] {
        let space = FockSpace::bose(d, cap).expect("small fixed spaces");
        for _ in 0..pairs_per_space {
            let f: Vec<Complex64> = (0..d).map(|_| rand_c(r)).collect();
            let g: Vec<Complex64> = (0..d).map(|_| rand_c(r)).collect();
            let res = ccr_residual(&space, &f, &g).expect("argument lengths match");
            worst = max_f(worst, res);
        }
    }
    worst
}

pub struct CarOutcome {
    pub relations: f64,
    pub nilpotency: f64,
}

pub fn car_worst(dims: &[usize], pairs_per_space: usize, seed: u64) -> CarOutcome {
    let r = &mut rng(seed, 0xC2);
    let mut relations = 0.0f64;
    let mut nilpotency = 0.0f64;
    for &d in dims {
        let space = FockSpace::fermi(d).expect("pre-validated dimension");
        for _ in 0..pairs_per_space {
            let f: Vec<Complex64> = (0..d).map(|_| rand_c(r)).collect();
            let g: Vec<Complex64> = (0..d).map(|_| rand_c(r)).collect();
            let rep = car_check(&space, &f, &g).expect("argument lengths match");
            relations = [rep.annihilator_pair, rep.creator_pair, rep.mixed_defect]
                .into_iter()
                .fold(relations, max_f);
            nilpotency = max_f(nilpotency, rep.double_creation);
        }
    }
    CarOutcome { relations, nilpotency }
}

// ── net layer ───────────────────────────────────────────────────────────

pub struct NetResiduals {
    pub isotony: f64,
    pub causality: f64,
    pub functor: f64,
    pub pullback: f64,
    pub transport_value: f64,
    pub transport_residual: f64,
    pub transport_agreement: f64,
    pub independence_restriction: f64,
    pub independence_factorization: f64,
    pub parseval: f64,
}

fn hand_quadruple() -> AdmissibleQuadruple {
    let proj = CMatrix::diag_re(&[1.0, 0.0]);
    let tilted = CMatrix::from_fn(2, |_, _| Complex64::new(0.5, 0.0));
    summers_werner(&proj, &tilted, &proj, &tilted)
        .expect("the two projections fail to commute by a fixed margin")
}

pub fn net_residuals(t_extent: i64, x_extent: i64, state_samples: usize, seed: u64) -> NetResiduals {
    let r = &mut rng(seed, 0xD5);
    let site = CausalSite::grid(t_extent, x_extent).expect("pre-validated extents");
    let n = site.len();

    // nested diamonds around every point, each chained into the full region
    let full = site.full_region();
    let mut iso_pairs = Vec::new();
    for &center in site.points() {
        let d0 = site.diamond(center, 0);
        let d1 = site.diamond(center, 1);
        let d2 = site.diamond(center, 2);
        iso_pairs.push((d0, d1.clone()));
        iso_pairs.push((d1, d2.clone()));
        iso_pairs.push((d2, full.clone()));
    }
    let isotony = check_isotony(&iso_pairs)
        .expect("diamond chains are nested by construction")
        .max_residual;

    // every single-point pair, disjoint or not; the gate takes the worst
    // commutator over the causally disjoint ones
    let mut cause_pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let ri = Region::new(&site, &[i]).expect("index in range");
            let rj = Region::new(&site, &[j]).expect("index in range");
            cause_pairs.push((ri, rj));
        }
    }
    let cause = check_causality(&cause_pairs).expect("single-point regions share the site");
    let causality = cause
        .pairs
        .iter()
        .filter(|p| p.causally_disjoint)
        .map(|p| p.max_commutator)
        .fold(0.0f64, max_f);

    // a two-stage inclusion chain drives the functor laws
    let ra = Region::new(&site, &[0, 1]).expect("grids have at least four points");
    let rb = Region::new(&site, &[0, 1, 2]).expect("grids have at least four points");
    let site_a = ra.subsite();
    let site_b = rb.subsite();
    let map_ab: Vec<usize> = ra
        .indices()
        .iter()
        .map(|i| rb.indices().iter().position(|j| j == i).expect("nested regions"))
        .collect();
    let e1 = SiteEmbedding::new(&site_a, &site_b, &map_ab).expect("inclusion preserves relations");
    let e2 = rb.inclusion();
    let e12 = e1.then(&e2).expect("targets chain");
    let alpha1 = embed(&e1);
    let alpha2 = embed(&e2);
    let alpha12 = embed(&e12);
    let ident = embed(&SiteEmbedding::identity(&site_a));

    let mut functor = 0.0f64;
    let one_a = CMatrix::identity(site_a.dim());
    functor = max_f(
        functor,
        (&alpha1.apply(&one_a).expect("unit maps") - &CMatrix::identity(site_b.dim())).norm_f(),
    );
    for _ in 0..3 {
        let m = rand_mat(r, site_a.dim());
        let m2 = rand_mat(r, site_a.dim());
        let prod = alpha1.apply(&(&m * &m2)).expect("dimensions match");
        let sep = &alpha1.apply(&m).expect("dimensions match")
            * &alpha1.apply(&m2).expect("dimensions match");
        functor = max_f(functor, (&prod - &sep).norm_f());
        let two_step = alpha2
            .apply(&alpha1.apply(&m).expect("dimensions match"))
            .expect("dimensions match");
        let one_step = alpha12.apply(&m).expect("dimensions match");
        functor = max_f(functor, (&two_step - &one_step).norm_f());
        functor = max_f(functor, (&ident.apply(&m).expect("identity maps") - &m).norm_f());
    }

    // pulling back along the chain must agree with pulling back once
    let mut pullback_res = 0.0f64;
    for _ in 0..state_samples {
        let s = rand_mixed(r, site.dim());
        let via_b = pullback(&alpha2, &s).expect("state lives on the target");
        let two_step = pullback(&alpha1, &via_b).expect("state lives on the middle site");
        let one_step = pullback(&alpha12, &s).expect("state lives on the target");
        pullback_res = max_f(pullback_res, (two_step.rho() - one_step.rho()).op_norm());
    }

    // transport the extremal pair through the spacelike two-point inclusion
    let q = hand_quadruple();
    let alpha_pair = embed(&ra.inclusion());
    let bo = bell_operator(&q).expect("construction output is admissible");
    let (best, _) = max_violation_state(&bo).expect("operator is hermitian");
    let rest_dim = site.dim() / 4;
    let extended = State::new(
        best.rho().kron(&CMatrix::identity(rest_dim).scale_re(1.0 / rest_dim as f64)),
    )
    .expect("tensor with a normalized identity stays a state");
    let (direct, pulled) = chsh_transport(&q, &alpha_pair, &extended)
        .expect("quadruple dimension matches the embedding source");
    let transport_value = direct;
    let mut transport_residual = max_f((direct - TWO_SQRT_2).abs(), (pulled - TWO_SQRT_2).abs());
    let mut transport_agreement = (direct - pulled).abs();
    for _ in 0..state_samples {
        let s = rand_mixed(r, site.dim());
        let (d_val, p_val) =
            chsh_transport(&q, &alpha_pair, &s).expect("random states share the target space");
        transport_agreement = max_f(transport_agreement, (d_val - p_val).abs());
    }
    transport_residual = max_f(transport_residual, 0.0);

    // independent preparations on the first two points
    let r1 = Region::new(&site, &[0]).expect("index in range");
    let r2 = Region::new(&site, &[1]).expect("index in range");
    let mut independence_restriction = 0.0f64;
    let mut independence_factorization = 0.0f64;
    for _ in 0..state_samples {
        let s1 = rand_mixed(r, 2);
        let s2 = rand_mixed(r, 2);
        let joint = independence_product(&r1, &r2, &s1, &s2)
            .expect("single-point regions are disjoint");
        let back1 = pullback(&embed(&r1.inclusion()), &joint).expect("joint state restricts");
        let back2 = pullback(&embed(&r2.inclusion()), &joint).expect("joint state restricts");
        independence_restriction = max_f(
            independence_restriction,
            (back1.rho() - s1.rho()).op_norm().max((back2.rho() - s2.rho()).op_norm()),
        );
        for k in 1..=3u8 {
            for l in 1..=3u8 {
                let a = pauli_string(n, &[(0, k)]).expect("axis in range");
                let b = pauli_string(n, &[(1, l)]).expect("axis in range");
                let joint_val = joint.eval(&(&a * &b)).expect("dimensions match");
                let split = joint.eval(&a).expect("dimensions match")
                    * joint.eval(&b).expect("dimensions match");
                independence_factorization =
                    max_f(independence_factorization, (joint_val - split).norm());
            }
        }
    }

    let parseval = parseval_defect(&site, &rand_mat(r, site.dim()))
        .expect("matrix drawn on the site dimension");

    NetResiduals {
        isotony,
        causality,
        functor,
        pullback: pullback_res,
        transport_value,
        transport_residual,
        transport_agreement,
        independence_restriction,
        independence_factorization,
        parseval,
    }
}
