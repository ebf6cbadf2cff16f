use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::f64::consts::SQRT_2;

use oplab_alg::algebra::generate;
use oplab_alg::states::State;
use oplab_bell::{
    bell_operator, chsh_value, max_violation_state, summers_werner, AdmissibleQuadruple,
    BellError,
};
use oplab_core::mat::{comm, pauli, CMatrix, C_ZERO};
use oplab_core::tol;
use oplab_net::{
    algebra_of, causally_disjoint, chsh_transport, check_causality, check_isotony,
    conditional_expectation, embed, independence_product, parseval_defect, pauli_string,
    pullback, CausalSite, NetError, Region, SiteEmbedding,
};

const SEED: u64 = 0x0E75_CA5E;

fn rng(extra: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ extra)
}

fn rand_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn rand_mixed(rng: &mut ChaCha8Rng, n: usize) -> State {
    let g = rand_matrix(rng, n);
    let rho = &g * &g.adj();
    let tr = rho.trace().re;
    State::new(rho.scale_re(1.0 / tr)).expect("normalized Gram matrix")
}

fn rand_pure(rng: &mut ChaCha8Rng, n: usize) -> State {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    State::pure_from_vector(&v).expect("random vector is nonzero")
}

fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    (&a.adj() * b).trace()
}

fn matrix_unit(dim: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim);
    m.set(i, j, Complex64::new(1.0, 0.0));
    m
}

#[test]
fn sites_enforce_their_invariants() {
    let site = CausalSite::grid(2, 3).expect("six points fit");
    assert_eq!(site.len(), 6);
    assert_eq!(site.dim(), 64);
    assert_eq!(site.points()[0], (0, 0));
    assert_eq!(site.points()[5], (1, 2));

    for i in 0..6 {
        assert!(!site.disjoint(i, i));
        for j in 0..6 {
            assert_eq!(site.disjoint(i, j), site.disjoint(j, i));
        }
    }
    // strictly spacelike, lightlike excluded
    assert!(causally_disjoint((0, 0), (0, 5)));
    assert!(causally_disjoint((0, 0), (0, 1)));
    assert!(!causally_disjoint((0, 0), (1, 1)));
    assert!(!causally_disjoint((0, 0), (1, 0)));
    assert!(!causally_disjoint((0, 0), (3, 2)));

    let crowded: Vec<(i64, i64)> = (0..13).map(|x| (0, x)).collect();
    assert!(matches!(
        CausalSite::new(&crowded),
        Err(NetError::TooManyPoints { count: 13, cap: 12 })
    ));
    assert!(matches!(CausalSite::grid(3, 5), Err(NetError::TooManyPoints { .. })));
    assert!(matches!(
        CausalSite::new(&[(0, 0), (1, 1), (0, 0)]),
        Err(NetError::DuplicatePoint { t: 0, x: 0 })
    ));
}

#[test]
fn diamonds_select_taxicab_neighborhoods() {
    let site = CausalSite::grid(3, 3).expect("nine points fit");
    let d = site.diamond((1, 1), 1);
    let picked: Vec<(i64, i64)> =
        d.indices().iter().map(|&k| site.points()[k]).collect();
    assert_eq!(picked, vec![(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)]);
    assert_eq!(site.diamond((1, 1), 0).len(), 1);
    assert_eq!(site.diamond((1, 1), 10), site.full_region());
    assert!(site.diamond((-5, -5), 1).is_empty());
}

#[test]
fn regions_validate_and_complement() {
    let site = CausalSite::grid(2, 3).expect("six points fit");
    let r = Region::new(&site, &[4, 1, 1, 2]).expect("valid indices");
    assert_eq!(r.indices(), &[1, 2, 4]);
    assert!(matches!(
        Region::new(&site, &[6]),
        Err(NetError::PointOutOfRange { index: 6, len: 6 })
    ));

    let small = Region::new(&site, &[1]).expect("valid");
    assert!(small.is_subset_of(&r));
    assert!(!r.is_subset_of(&small));
    assert_eq!(r.complement().indices(), &[0, 3, 5]);
    assert_eq!(site.full_region().complement().len(), 0);

    let sub = r.subsite();
    assert_eq!(sub.points(), &[(0, 1), (0, 2), (1, 1)]);
    assert_eq!(r.inclusion().map(), &[1, 2, 4]);

    let other = CausalSite::grid(2, 2).expect("four points fit");
    let foreign = Region::new(&other, &[0]).expect("valid");
    assert!(!foreign.is_subset_of(&small));
}

#[test]
fn algebra_spans_have_the_expected_dimension() {
    let pair_site = CausalSite::new(&[(0, 0), (0, 2)]).expect("two points");
    let empty = Region::new(&pair_site, &[]).expect("empty");
    let alg_empty = algebra_of(&empty);
    assert_eq!(alg_empty.span_dim(), 1);
    assert!(alg_empty.generators().is_empty());

    let single = Region::new(&pair_site, &[0]).expect("one point");
    let alg_single = algebra_of(&single);
    assert_eq!(alg_single.span_dim(), 4);
    assert_eq!(alg_single.generators().len(), 3);
    let closed = generate(4, alg_single.generators()).expect("matching dims");
    assert_eq!(closed.dim(), 4);

    let triple_site = CausalSite::new(&[(0, 0), (0, 2), (0, 4)]).expect("three points");
    let duo = Region::new(&triple_site, &[0, 2]).expect("two points");
    let alg_duo = algebra_of(&duo);
    assert_eq!(alg_duo.span_dim(), 16);
    let closed = generate(8, alg_duo.generators()).expect("matching dims");
    assert_eq!(closed.dim(), 16);

    let lattice = CausalSite::grid(2, 3).expect("six points fit");
    let full = algebra_of(&lattice.full_region());
    assert_eq!(full.span_dim(), 4096);
    assert_eq!(full.span_dim(), lattice.dim() * lattice.dim());
}

#[test]
fn commutant_duality_on_the_two_point_site() {
    let site = CausalSite::new(&[(0, 0), (0, 2)]).expect("two points");
    let left = generate(
        4,
        algebra_of(&Region::new(&site, &[0]).expect("valid")).generators(),
    )
    .expect("matching dims");
    let right = generate(
        4,
        algebra_of(&Region::new(&site, &[1]).expect("valid")).generators(),
    )
    .expect("matching dims");
    assert!(left.commutant().span_equal(&right));
    assert!(right.commutant().span_equal(&left));
}

#[test]
fn conditional_expectation_is_an_orthogonal_projection() {
    let site = CausalSite::grid(2, 2).expect("four points fit");
    let r = Region::new(&site, &[0, 3]).expect("valid");
    let mut seeded = rng(1);
    for _ in 0..5 {
        let m = rand_matrix(&mut seeded, 16);
        let e = conditional_expectation(&r, &m).expect("matching dims");
        let ee = conditional_expectation(&r, &e).expect("matching dims");
        assert!((&ee - &e).norm_f() <= 1e-13);
        let e_adj = conditional_expectation(&r, &m.adj()).expect("matching dims");
        assert!((&e_adj - &e.adj()).norm_f() <= 1e-13);
        // the residual is orthogonal to the range
        let residual = &m - &e;
        assert!(hs_inner(&e, &residual).norm() <= 1e-12);
    }

    let inside = pauli_string(4, &[(0, 1), (3, 2)]).expect("valid string");
    let kept = conditional_expectation(&r, &inside).expect("matching dims");
    assert!((&kept - &inside).norm_f() <= 1e-14);
    let outside = pauli_string(4, &[(0, 1), (1, 3)]).expect("valid string");
    let killed = conditional_expectation(&r, &outside).expect("matching dims");
    assert!(killed.norm_f() <= 1e-14);

    let m = rand_matrix(&mut seeded, 16);
    let all = conditional_expectation(&site.full_region(), &m).expect("matching dims");
    assert!((&all - &m).norm_f() <= 1e-14);
    let none =
        conditional_expectation(&Region::new(&site, &[]).expect("empty"), &m).expect("dims");
    let scalar = CMatrix::identity(16).scale(m.trace() / Complex64::new(16.0, 0.0));
    assert!((&none - &scalar).norm_f() <= 1e-13);

    assert!(matches!(
        conditional_expectation(&r, &CMatrix::identity(8)),
        Err(NetError::DimMismatch { left: 8, right: 16 })
    ));
}

#[test]
fn isotony_holds_for_nested_regions() {
    let site = CausalSite::grid(2, 3).expect("six points fit");
    let mut seeded = rng(2);
    let mut pairs = Vec::new();
    for _ in 0..6 {
        let mut order: Vec<usize> = (0..6).collect();
        order.shuffle(&mut seeded);
        let inner = Region::new(&site, &order[..1]).expect("valid");
        let middle = Region::new(&site, &order[..2]).expect("valid");
        let outer = Region::new(&site, &order[..4]).expect("valid");
        pairs.push((inner.clone(), middle.clone()));
        pairs.push((middle, outer));
        pairs.push((inner.clone(), inner));
    }
    let report = check_isotony(&pairs).expect("well-formed pairs");
    assert!(report.pass);
    assert_eq!(report.residuals.len(), pairs.len());
    assert!(report.max_residual <= tol::NET_ISOTONY_ABS);

    let small = Region::new(&site, &[0]).expect("valid");
    let big = Region::new(&site, &[0, 1]).expect("valid");
    assert!(matches!(
        check_isotony(&[(big.clone(), small.clone())]),
        Err(NetError::NotNested { index: 0 })
    ));
    let other = CausalSite::grid(2, 2).expect("four points fit");
    let foreign = Region::new(&other, &[0]).expect("valid");
    assert!(matches!(
        check_isotony(&[(foreign, small)]),
        Err(NetError::SiteMismatch)
    ));
}

#[test]
fn causality_tracks_spacelike_separation() {
    let site = CausalSite::grid(2, 3).expect("six points fit");
    let region = |idx: &[usize]| Region::new(&site, idx).expect("valid");
    let pairs = vec![
        (region(&[0]), region(&[2])),    // spacelike
        (region(&[0, 1]), region(&[2])), // spacelike
        (region(&[0]), region(&[0])),    // same point
        (region(&[0]), region(&[3])),    // timelike, different points
        (region(&[]), site.full_region()),
    ];
    let report = check_causality(&pairs).expect("well-formed pairs");
    assert!(report.pass);

    assert!(report.pairs[0].causally_disjoint);
    assert!(report.pairs[0].max_commutator <= tol::NET_COMMUTE_ABS);
    assert!(report.pairs[0].witness.is_none());
    assert!(report.pairs[1].causally_disjoint);
    assert!(report.pairs[1].max_commutator <= tol::NET_COMMUTE_ABS);

    // a shared point produces a genuine noncommuting witness
    assert!(!report.pairs[2].causally_disjoint);
    let (_, _, norm) = report.pairs[2].witness.expect("shared point witnesses");
    assert!((norm - 2.0).abs() <= 1e-12);
    assert!((report.pairs[2].max_commutator - 2.0).abs() <= 1e-12);

    // timelike but distinct points: one qubit per point makes the
    // algebras commute anyway, so no witness exists
    assert!(!report.pairs[3].causally_disjoint);
    assert!(report.pairs[3].max_commutator <= tol::NET_COMMUTE_ABS);
    assert!(report.pairs[3].witness.is_none());

    assert!(report.pairs[4].causally_disjoint);
    assert!(report.pairs[4].max_commutator <= tol::NET_COMMUTE_ABS);

    let other = CausalSite::grid(2, 2).expect("four points fit");
    assert!(matches!(
        check_causality(&[(Region::new(&other, &[0]).expect("valid"), region(&[0]))]),
        Err(NetError::SiteMismatch)
    ));
}

#[test]
fn parseval_certifies_quasilocal_completeness() {
    let mut seeded = rng(3);
    let lattice = CausalSite::grid(2, 3).expect("six points fit");
    for _ in 0..3 {
        let m = rand_matrix(&mut seeded, 64);
        let defect = parseval_defect(&lattice, &m).expect("matching dims");
        assert!(defect <= tol::PARSEVAL_ABS, "defect {defect}");
    }
    let string = pauli_string(6, &[(0, 1), (3, 2), (5, 3)]).expect("valid string");
    let defect = parseval_defect(&lattice, &string).expect("matching dims");
    assert!(defect <= tol::PARSEVAL_ABS);

    let small = CausalSite::grid(2, 2).expect("four points fit");
    let m = rand_matrix(&mut seeded, 16);
    let defect = parseval_defect(&small, &m).expect("matching dims");
    assert!(defect <= tol::PARSEVAL_ABS);

    assert!(matches!(
        parseval_defect(&lattice, &CMatrix::identity(16)),
        Err(NetError::DimMismatch { left: 16, right: 64 })
    ));
}

#[test]
fn matrix_units_arise_from_single_point_generators() {
    // every matrix unit of the 64-dimensional ambient space is a product
    // of single-point generators, so the union of the local algebras
    // generates the full matrix algebra
    let site = CausalSite::grid(2, 3).expect("six points fit");
    let n = site.len();
    let dim = site.dim();
    let id = CMatrix::identity(dim);

    let mut corner = id.clone();
    for p in 0..n {
        let z = pauli_string(n, &[(p, 3)]).expect("valid string");
        corner = &corner * &(&id + &z).scale_re(0.5);
    }
    assert!((&corner - &matrix_unit(dim, 0, 0)).norm_f() <= 1e-13);

    let shift = |j: usize| -> CMatrix {
        let axes: Vec<(usize, u8)> =
            (0..n).filter(|&p| (j >> (n - 1 - p)) & 1 == 1).map(|p| (p, 1)).collect();
        pauli_string(n, &axes).expect("valid string")
    };

    let mut diagonal_sum = CMatrix::zeros(dim);
    for j in 0..dim {
        let s = shift(j);
        let unit = &(&s * &corner) * &s.adj();
        diagonal_sum = &diagonal_sum + &unit;
    }
    assert!((&diagonal_sum - &id).norm_f() <= 1e-12);

    let mut seeded = rng(4);
    for _ in 0..10 {
        let j = seeded.gen_range(0..dim);
        let k = seeded.gen_range(0..dim);
        let built = &(&shift(j) * &corner) * &shift(k).adj();
        assert!((&built - &matrix_unit(dim, j, k)).norm_f() <= 1e-12);
    }
}

#[test]
fn embeddings_validate_compose_and_translate() {
    let lattice = CausalSite::grid(2, 3).expect("six points fit");
    let corner = CausalSite::grid(2, 2).expect("four points fit");

    let id = SiteEmbedding::identity(&lattice);
    assert_eq!(id.map(), &[0, 1, 2, 3, 4, 5]);

    let shifted = SiteEmbedding::by_translation(&corner, &lattice, 0, 1).expect("fits");
    assert_eq!(shifted.map(), &[1, 2, 4, 5]);
    assert!(matches!(
        SiteEmbedding::by_translation(&corner, &lattice, 0, 2),
        Err(NetError::NotAnEmbedding { .. })
    ));

    assert!(matches!(
        SiteEmbedding::new(&corner, &lattice, &[0, 1]),
        Err(NetError::NotAnEmbedding { .. })
    ));
    assert!(matches!(
        SiteEmbedding::new(&corner, &lattice, &[0, 1, 2, 9]),
        Err(NetError::NotAnEmbedding { .. })
    ));
    assert!(matches!(
        SiteEmbedding::new(&corner, &lattice, &[0, 1, 2, 2]),
        Err(NetError::NotAnEmbedding { .. })
    ));

    // spacelike pair mapped onto a timelike pair: preservation fails
    let spaced = CausalSite::new(&[(0, 0), (0, 2)]).expect("two points");
    assert!(matches!(
        SiteEmbedding::new(&spaced, &lattice, &[0, 3]),
        Err(NetError::NotAnEmbedding { .. })
    ));
    // timelike pair mapped onto a spacelike pair: reflection fails
    let stacked = CausalSite::new(&[(0, 0), (1, 0)]).expect("two points");
    assert!(matches!(
        SiteEmbedding::new(&stacked, &lattice, &[0, 2]),
        Err(NetError::NotAnEmbedding { .. })
    ));

    let row = CausalSite::new(&[(0, 1), (0, 2)]).expect("two points");
    let into_corner = SiteEmbedding::by_translation(&row, &corner, 0, -1).expect("fits");
    let chained = into_corner.then(&shifted).expect("compatible endpoints");
    assert_eq!(chained.map(), &[shifted.map()[0], shifted.map()[1]]);
    assert!(matches!(shifted.then(&into_corner), Err(NetError::SiteMismatch)));
}

#[test]
fn morphisms_act_functorially() {
    let a = CausalSite::new(&[(0, 0), (0, 5)]).expect("two points");
    let b = CausalSite::new(&[(0, 0), (0, 5), (0, 10)]).expect("three points");
    let c = CausalSite::new(&[(0, 0), (0, 5), (0, 10), (0, 15)]).expect("four points");
    let e1 = SiteEmbedding::new(&a, &b, &[0, 1]).expect("inclusion");
    let e2 = SiteEmbedding::new(&b, &c, &[0, 1, 2]).expect("inclusion");
    let alpha1 = embed(&e1);
    let alpha2 = embed(&e2);
    let alpha12 = embed(&e1.then(&e2).expect("compatible endpoints"));

    let mut seeded = rng(5);
    let ident = embed(&SiteEmbedding::identity(&a));
    for _ in 0..3 {
        let m = rand_matrix(&mut seeded, 4);
        assert!((&ident.apply(&m).expect("dims") - &m).norm_f() <= 1e-15);

        let lhs = alpha12.apply(&m).expect("dims");
        let rhs = alpha2.apply(&alpha1.apply(&m).expect("dims")).expect("dims");
        assert!((&lhs - &rhs).norm_f() <= tol::FUNCTOR_ABS);

        let x = rand_matrix(&mut seeded, 4);
        let product = alpha1.apply(&(&m * &x)).expect("dims");
        let mapped = &alpha1.apply(&m).expect("dims") * &alpha1.apply(&x).expect("dims");
        assert!((&product - &mapped).norm_f() <= 1e-12);
        let starred = alpha1.apply(&m.adj()).expect("dims");
        assert!((&starred - &alpha1.apply(&m).expect("dims").adj()).norm_f() <= 1e-14);
    }
    let one = alpha1.apply(&CMatrix::identity(4)).expect("dims");
    assert!((&one - &CMatrix::identity(8)).norm_f() <= 1e-15);

    // images of the source string basis stay orthogonal at full strength:
    // the morphism has trivial kernel
    let strings: Vec<CMatrix> = (0..16)
        .map(|s| {
            pauli_string(2, &[(0, (s / 4) as u8), (1, (s % 4) as u8)]).expect("valid string")
        })
        .collect();
    let images: Vec<CMatrix> =
        strings.iter().map(|p| alpha12.apply(p).expect("dims")).collect();
    for (s, ps) in images.iter().enumerate() {
        for (t, pt) in images.iter().enumerate() {
            let want = if s == t { 16.0 } else { 0.0 };
            assert!((hs_inner(ps, pt) - Complex64::new(want, 0.0)).norm() <= 1e-12);
        }
    }

    // disjoint source regions keep commuting images
    for k in 1..=3u8 {
        for l in 1..=3u8 {
            let left = alpha12.apply(&pauli_string(2, &[(0, k)]).expect("valid")).expect("dims");
            let right = alpha12.apply(&pauli_string(2, &[(1, l)]).expect("valid")).expect("dims");
            assert!(comm(&left, &right).norm_f() <= 1e-15);
        }
    }

    assert!(matches!(
        alpha1.apply(&CMatrix::identity(8)),
        Err(NetError::DimMismatch { left: 8, right: 4 })
    ));
}

#[test]
fn pullback_is_the_partial_trace() {
    let a = CausalSite::new(&[(0, 0), (0, 5)]).expect("two points");
    let c = CausalSite::new(&[(0, 0), (0, 5), (0, 10), (0, 15)]).expect("four points");
    // scattered legs: source points land on target legs 0 and 2
    let e = SiteEmbedding::new(&a, &c, &[0, 2]).expect("valid embedding");
    let alpha = embed(&e);

    let mut seeded = rng(6);
    for _ in 0..4 {
        let target_state = rand_mixed(&mut seeded, 16);
        let pulled = pullback(&alpha, &target_state).expect("matching dims");
        assert_eq!(pulled.dim(), 4);
        assert!((pulled.rho().trace().re - 1.0).abs() <= 1e-12);
        assert!(pulled.eigenvalues()[0] >= -tol::PULLBACK_POS_SLACK);

        // solving against the matrix-unit dual basis is an independent
        // route to the same density matrix
        let oracle = CMatrix::from_fn(4, |l, k| {
            let image = alpha.apply(&matrix_unit(4, k, l)).expect("dims");
            (target_state.rho() * &image).trace()
        });
        assert!((pulled.rho() - &oracle).norm_f() <= tol::PULLBACK_PT_ABS);
    }

    let ident = embed(&SiteEmbedding::identity(&a));
    let s = rand_mixed(&mut seeded, 4);
    let same = pullback(&ident, &s).expect("matching dims");
    assert!((same.rho() - s.rho()).norm_f() <= 1e-15);

    // contravariance over a composed pair of embeddings
    let b = CausalSite::new(&[(0, 0), (0, 5), (0, 10)]).expect("three points");
    let e1 = SiteEmbedding::new(&a, &b, &[0, 1]).expect("inclusion");
    let e2 = SiteEmbedding::new(&b, &c, &[0, 1, 2]).expect("inclusion");
    for _ in 0..3 {
        let top = rand_mixed(&mut seeded, 16);
        let two_step =
            pullback(&embed(&e1), &pullback(&embed(&e2), &top).expect("dims")).expect("dims");
        let one_step =
            pullback(&embed(&e1.then(&e2).expect("endpoints")), &top).expect("dims");
        assert!((two_step.rho() - one_step.rho()).norm_f() <= tol::PULLBACK_CONTRA_ABS);
    }

    assert!(matches!(
        pullback(&alpha, &s),
        Err(NetError::DimMismatch { left: 4, right: 16 })
    ));
}

#[test]
fn transport_preserves_correlation_values() {
    let a = CausalSite::new(&[(0, 0), (0, 5)]).expect("two points");
    let id2 = CMatrix::identity(2);
    let quadruple = AdmissibleQuadruple::new(
        pauli(1).kron(&id2),
        pauli(2).kron(&id2),
        id2.kron(&pauli(1)),
        id2.kron(&pauli(2)),
    )
    .expect("common dimension");

    let mut seeded = rng(7);
    let ident = embed(&SiteEmbedding::identity(&a));
    let s = rand_mixed(&mut seeded, 4);
    let (direct, pulled) = chsh_transport(&quadruple, &ident, &s).expect("matching dims");
    assert!((direct - pulled).abs() <= 1e-14);
    let bo = bell_operator(&quadruple).expect("admissible");
    assert!((direct - chsh_value(&s, &bo).expect("dims")).abs() <= 1e-14);

    // maximally violating preparation extended by noise legs
    let c = CausalSite::new(&[(0, 0), (0, 5), (0, 10), (0, 15)]).expect("four points");
    let e = SiteEmbedding::new(&a, &c, &[0, 1]).expect("valid embedding");
    let alpha = embed(&e);
    let proj = CMatrix::diag(&[Complex64::new(1.0, 0.0), C_ZERO]);
    let tilted = CMatrix::from_fn(2, |_, _| Complex64::new(0.5, 0.0));
    let optimal = summers_werner(&proj, &tilted, &proj, &tilted).expect("noncommuting");
    let (best_state, best_value) =
        max_violation_state(&bell_operator(&optimal).expect("admissible"))
            .expect("eigendecomposition");
    assert!((best_value - 2.0 * SQRT_2).abs() <= 1e-9);
    let extended = State::new(best_state.rho().kron(&CMatrix::identity(4).scale_re(0.25)))
        .expect("product with the maximally mixed rest");
    let (direct, pulled) = chsh_transport(&optimal, &alpha, &extended).expect("matching dims");
    assert!((direct - 2.0 * SQRT_2).abs() <= 1e-9);
    assert!((pulled - 2.0 * SQRT_2).abs() <= 1e-9);
    assert!((direct - pulled).abs() <= tol::TRANSPORT_AGREE_ABS);

    // separable targets keep the pulled-back value classical
    for _ in 0..5 {
        let legs: Vec<State> = (0..4).map(|_| rand_mixed(&mut seeded, 2)).collect();
        let mut rho = legs[0].rho().clone();
        for leg in &legs[1..] {
            rho = rho.kron(leg.rho());
        }
        let target = State::new(rho).expect("product state");
        let (direct, pulled) =
            chsh_transport(&quadruple, &alpha, &target).expect("matching dims");
        assert!((direct - pulled).abs() <= tol::TRANSPORT_AGREE_ABS);
        assert!(pulled.abs() <= 2.0 + 1e-9);
    }

    let inadmissible = AdmissibleQuadruple::new(
        pauli(1).scale_re(2.0).kron(&id2),
        pauli(2).kron(&id2),
        id2.kron(&pauli(1)),
        id2.kron(&pauli(2)),
    )
    .expect("common dimension");
    assert!(matches!(
        chsh_transport(&inadmissible, &alpha, &extended),
        Err(NetError::Bell(BellError::InvalidQuadruple { .. }))
    ));
    assert!(matches!(
        chsh_transport(&quadruple, &alpha, &s),
        Err(NetError::DimMismatch { .. })
    ));
}

#[test]
fn independent_preparations_factorize() {
    let site = CausalSite::new(&[(0, 0), (0, 5), (1, 10)]).expect("three points");
    let r1 = Region::new(&site, &[0]).expect("valid");
    let r2 = Region::new(&site, &[1]).expect("valid");

    let mut seeded = rng(8);
    for trial in 0..6 {
        let (s1, s2) = if trial % 2 == 0 {
            (rand_pure(&mut seeded, 2), rand_pure(&mut seeded, 2))
        } else {
            (rand_mixed(&mut seeded, 2), rand_mixed(&mut seeded, 2))
        };
        let joint = independence_product(&r1, &r2, &s1, &s2).expect("disjoint regions");
        assert_eq!(joint.dim(), 8);

        let back1 = pullback(&embed(&r1.inclusion()), &joint).expect("dims");
        let back2 = pullback(&embed(&r2.inclusion()), &joint).expect("dims");
        assert!((back1.rho() - s1.rho()).norm_f() <= tol::INDEP_RESTRICT_ABS);
        assert!((back2.rho() - s2.rho()).norm_f() <= tol::INDEP_RESTRICT_ABS);
    }

    // cross correlations factorize over random single-point observables
    let s1 = rand_mixed(&mut seeded, 2);
    let s2 = rand_mixed(&mut seeded, 2);
    let joint = independence_product(&r1, &r2, &s1, &s2).expect("disjoint regions");
    for _ in 0..100 {
        let coeffs = |rng: &mut ChaCha8Rng| -> [Complex64; 4] {
            [0; 4].map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        };
        let ca = coeffs(&mut seeded);
        let cb = coeffs(&mut seeded);
        let mut a_small = CMatrix::zeros(2);
        let mut b_small = CMatrix::zeros(2);
        let mut a_full = CMatrix::zeros(8);
        let mut b_full = CMatrix::zeros(8);
        for k in 0..4u8 {
            let pk = pauli(k as usize);
            a_small = &a_small + &pk.scale(ca[k as usize]);
            b_small = &b_small + &pk.scale(cb[k as usize]);
            let fk1 = pauli_string(3, &[(0, k)]).expect("valid string");
            let fk2 = pauli_string(3, &[(1, k)]).expect("valid string");
            a_full = &a_full + &fk1.scale(ca[k as usize]);
            b_full = &b_full + &fk2.scale(cb[k as usize]);
        }
        let product = joint.eval(&(&a_full * &b_full)).expect("dims");
        let split = s1.eval(&a_small).expect("dims") * s2.eval(&b_small).expect("dims");
        assert!((product - split).norm() <= tol::INDEP_FACTOR_ABS);
    }

    let flat = State::new(CMatrix::identity(2).scale_re(0.5)).expect("maximally mixed");
    let joint = independence_product(&r1, &r2, &flat, &flat).expect("disjoint regions");
    let global = CMatrix::identity(8).scale_re(1.0 / 8.0);
    assert!((joint.rho() - &global).norm_f() <= 1e-15);

    let lattice = CausalSite::grid(2, 3).expect("six points fit");
    let top = Region::new(&lattice, &[0]).expect("valid");
    let below = Region::new(&lattice, &[3]).expect("valid");
    assert!(matches!(
        independence_product(&top, &below, &flat, &flat),
        Err(NetError::RegionsNotDisjoint { left: 0, right: 3 })
    ));
    let shared = Region::new(&lattice, &[0, 1]).expect("valid");
    assert!(matches!(
        independence_product(&top, &shared, &flat, &flat),
        Err(NetError::RegionsNotDisjoint { left: 0, right: 0 })
    ));
    assert!(matches!(
        independence_product(&top, &r2, &flat, &flat),
        Err(NetError::SiteMismatch)
    ));
    let wide = rand_mixed(&mut seeded, 4);
    let spaced1 = Region::new(&lattice, &[0]).expect("valid");
    let spaced2 = Region::new(&lattice, &[2]).expect("valid");
    assert!(matches!(
        independence_product(&spaced1, &spaced2, &wide, &flat),
        Err(NetError::DimMismatch { left: 4, right: 2 })
    ));
}
