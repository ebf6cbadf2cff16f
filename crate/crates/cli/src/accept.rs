//! The cross-layer acceptance suite: twelve criterion groups, each a
//! bundle of checks with pinned thresholds. The thresholds here are
//! deliberate literals, not registry lookups, so a tolerance override can
//! never soften the suite.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use crate::report::Check;
use crate::runners;

pub struct CriterionGroup {
    pub index: usize,
    pub label: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionGroup {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn acceptance_suite(seed: u64) -> Vec<CriterionGroup> {
    let mut groups = Vec::with_capacity(12);

    let (singlet_value, _) = runners::singlet_outcome([0.0, FRAC_PI_4, PI, FRAC_PI_2]);
    groups.push(CriterionGroup {
        index: 1,
        label: "CHSH singlet value",
        checks: vec![Check::new(
            "c01-chsh-singlet-value",
            "CHSH inequality",
            Some(singlet_value),
            (singlet_value - (1.0 + SQRT_2)).abs(),
            1e-10,
        )],
    });

    let con = runners::construction_outcome(100, seed);
    let excess = runners::tsirelson_excess(10_000, seed);
    groups.push(CriterionGroup {
        index: 2,
        label: "Tsirelson bound",
        checks: vec![
            Check::new(
                "c02-bell-operator-norm",
                "Tsirelson bound",
                Some(con.norm_value),
                con.norm_residual,
                1e-9,
            ),
            Check::new("c02-quadruple-sampling", "Tsirelson bound", None, excess, 1e-9),
        ],
    });

    let (classical_value, classical_res) = runners::classical_residual();
    groups.push(CriterionGroup {
        index: 3,
        label: "classical bound",
        checks: vec![Check::new(
            "c03-classical-bound",
            "classical correlation bound",
            Some(classical_value),
            classical_res,
            0.0,
        )],
    });

    groups.push(CriterionGroup {
        index: 4,
        label: "Summers-Werner construction",
        checks: vec![Check::new(
            "c04-summers-werner-construction",
            "Summers-Werner construction",
            None,
            con.dichotomic_defect,
            1e-9,
        )],
    });

    let gns = runners::gns_residuals(50, 200, &[2, 3, 4], seed);
    groups.push(CriterionGroup {
        index: 5,
        label: "GNS fidelity",
        checks: vec![
            Check::new(
                "c05-vector-expectation",
                "GNS construction",
                None,
                gns.expectation,
                1e-10,
            ),
            Check::new(
                "c05-irreducibility-matches-purity",
                "Schur's lemma",
                Some(gns.purity_mismatches as f64),
                gns.purity_mismatches as f64,
                0.0,
            ),
        ],
    });

    let com = runners::commutant_residuals(50, 6, seed);
    groups.push(CriterionGroup {
        index: 6,
        label: "bicommutant",
        checks: vec![
            Check::new("c06-double-commutant", "bicommutant theorem", None, com.double, 1e-8),
            Check::new("c06-triple-commutant", "bicommutant theorem", None, com.triple, 1e-8),
        ],
    });

    let modular = runners::modular_residuals(20, &[2, 3, 4], seed);
    let identities = modular.identities.max(modular.conj_span).max(modular.flow_span);
    groups.push(CriterionGroup {
        index: 7,
        label: "Tomita-Takesaki",
        checks: vec![
            Check::new(
                "c07-modular-identities",
                "Tomita-Takesaki theorem",
                None,
                identities,
                1e-7,
            ),
            Check::new(
                "c07-delta-spectrum-ratios",
                "modular spectrum",
                None,
                modular.ratio,
                1e-8,
            ),
        ],
    });

    let kms = runners::kms_residual(4, 25, &[2, 3, 4], seed);
    groups.push(CriterionGroup {
        index: 8,
        label: "KMS at beta = 1",
        checks: vec![Check::new(
            "c08-kms-beta-one",
            "KMS condition at beta = 1",
            None,
            kms,
            1e-8,
        )],
    });

    let f_std = vec![num_complex::Complex64::new(1.0, 0.0)];
    let gauss = runners::gaussian_outcome(1, 25, &[5, 10, 15, 20, 25], &f_std);
    groups.push(CriterionGroup {
        index: 9,
        label: "Fock vacuum Weyl expectation",
        checks: vec![
            Check::new(
                "c09-gaussian-value",
                "Fock vacuum characteristic function",
                Some(gauss.value),
                gauss.residual,
                1e-6,
            ),
            Check::new(
                "c09-truncation-convergence",
                "truncation convergence",
                None,
                gauss.monotone_violation,
                0.0,
            ),
        ],
    });

    let ccr = runners::ccr_worst(6, seed);
    let car = runners::car_worst(&[2, 4, 6], 6, seed);
    groups.push(CriterionGroup {
        index: 10,
        label: "CCR and CAR",
        checks: vec![
            Check::new(
                "c10-ccr-guarded",
                "canonical commutation relation",
                None,
                ccr,
                1e-12,
            ),
            Check::new(
                "c10-car-identities",
                "canonical anticommutation relation",
                None,
                car.relations,
                1e-12,
            ),
            Check::new("c10-fermi-nilpotency", "Pauli exclusion", None, car.nilpotency, 1e-12),
        ],
    });

    let spectra = runners::spectra_residuals(100, 6, None, seed);
    groups.push(CriterionGroup {
        index: 11,
        label: "spectral and positivity suite",
        checks: vec![
            Check::new(
                "c11-spectral-mapping",
                "spectral mapping theorem",
                None,
                spectra.mapping,
                1e-8,
            ),
            Check::new("c11-gelfand-radius", "Gelfand formula", None, spectra.gelfand, 1e-8),
            Check::new(
                "c11-sqrt-series-vs-eigen",
                "continuous functional calculus",
                None,
                spectra.sqrt_agree,
                1e-8,
            ),
            Check::new(
                "c11-positive-part-orthogonality",
                "Jordan decomposition",
                None,
                spectra.posneg,
                1e-12,
            ),
        ],
    });

    let net = runners::net_residuals(2, 3, 3, seed);
    groups.push(CriterionGroup {
        index: 12,
        label: "causal net suite",
        checks: vec![
            Check::new("c12-isotony", "isotony", None, net.isotony, 1e-10),
            Check::new("c12-causality", "Einstein causality", None, net.causality, 1e-12),
            Check::new("c12-functor-laws", "functoriality", None, net.functor, 1e-12),
            Check::new(
                "c12-pullback-contravariance",
                "state pullback",
                None,
                net.pullback,
                1e-10,
            ),
            Check::new(
                "c12-chsh-transport",
                "Tsirelson bound",
                Some(net.transport_value),
                net.transport_residual.max(net.transport_agreement),
                1e-9,
            ),
        ],
    });

    groups
}
