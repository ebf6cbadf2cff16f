//! Run configuration, the named-tolerance registry, and the dispatch from
//! subcommand to checks. One entry point, no interactive state: a run is a
//! pure function of (subcommand, input, seed, tolerance overrides).

use std::collections::BTreeMap;
use std::path::PathBuf;

use thiserror::Error;

use oplab_core::tol;

use crate::accept::acceptance_suite;
use crate::input::{parse_input, BellInput, FockInput, GnsInput, ModularInput, NetInput, SpectraInput};
use crate::report::{Check, Report};
use crate::runners;

/// Seed used when the command line does not provide one.
pub const DEFAULT_SEED: u64 = 0x5EED_0B5E;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input or configuration; maps to exit code 2.
    #[error("{0}")]
    Schema(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Spectra,
    Gns,
    Modular,
    Bell,
    Fock,
    Net,
    Selftest,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Spectra => "spectra",
            Subcommand::Gns => "gns",
            Subcommand::Modular => "modular",
            Subcommand::Bell => "bell",
            Subcommand::Fock => "fock",
            Subcommand::Net => "net",
            Subcommand::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Debug)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub input_path: Option<PathBuf>,
    pub tol_overrides: BTreeMap<String, f64>,
    pub seed: u64,
    pub output: OutputMode,
}

/// The documented names an override may target, with their defaults.
const TOL_NAMES: &[(&str, f64)] = &[
    ("SPECTRUM_MAP_ABS", tol::SPECTRUM_MAP_ABS),
    ("GELFAND_NORMAL_ABS", tol::GELFAND_NORMAL_ABS),
    ("GELFAND_ABS", tol::GELFAND_ABS),
    ("SQRT_AGREE", tol::SQRT_AGREE),
    ("POSNEG_ORTHO_REL", tol::POSNEG_ORTHO_REL),
    ("SPAN_EQ_ABS", tol::SPAN_EQ_ABS),
    ("GNS_EXPECT_ABS", tol::GNS_EXPECT_ABS),
    ("MODULAR_ID_ABS", tol::MODULAR_ID_ABS),
    ("MODULAR_CONJ_SPAN_ABS", tol::MODULAR_CONJ_SPAN_ABS),
    ("MODULAR_FLOW_SPAN_ABS", tol::MODULAR_FLOW_SPAN_ABS),
    ("KMS_ABS", tol::KMS_ABS),
    ("CCR_ABS", tol::CCR_ABS),
    ("CAR_ABS", tol::CAR_ABS),
    ("VACUUM_WEYL_STD_ABS", tol::VACUUM_WEYL_STD_ABS),
    ("TSIRELSON_SLACK", tol::TSIRELSON_SLACK),
    ("SINGLET_CLOSED_FORM_ABS", tol::SINGLET_CLOSED_FORM_ABS),
    ("MAXVIOL_CONSTRUCT_ABS", tol::MAXVIOL_CONSTRUCT_ABS),
    ("MAXVIOL_STATE_ABS", tol::MAXVIOL_STATE_ABS),
    ("OPT_ABS", tol::OPT_ABS),
    ("NET_ISOTONY_ABS", tol::NET_ISOTONY_ABS),
    ("NET_COMMUTE_ABS", tol::NET_COMMUTE_ABS),
    ("FUNCTOR_ABS", tol::FUNCTOR_ABS),
    ("PULLBACK_CONTRA_ABS", tol::PULLBACK_CONTRA_ABS),
    ("TRANSPORT_AGREE_ABS", tol::TRANSPORT_AGREE_ABS),
    ("INDEP_RESTRICT_ABS", tol::INDEP_RESTRICT_ABS),
    ("INDEP_FACTOR_ABS", tol::INDEP_FACTOR_ABS),
    ("PARSEVAL_ABS", tol::PARSEVAL_ABS),
];

/// Resolved thresholds: registry defaults plus validated overrides.
pub struct Tolerances {
    values: BTreeMap<&'static str, f64>,
}

impl Tolerances {
    pub fn with_overrides(overrides: &BTreeMap<String, f64>) -> Result<Self, CliError> {
        let mut values: BTreeMap<&'static str, f64> =
            TOL_NAMES.iter().map(|&(name, v)| (name, v)).collect();
        for (name, &v) in overrides {
            let key = TOL_NAMES
                .iter()
                .map(|&(n, _)| n)
                .find(|n| n == name)
                .ok_or_else(|| {
                    let known: Vec<&str> = TOL_NAMES.iter().map(|&(n, _)| n).collect();
                    CliError::Schema(format!(
                        "tol: unknown name `{name}`; known names: {}",
                        known.join(", ")
                    ))
                })?;
            if !v.is_finite() || v <= 0.0 {
                return Err(CliError::Schema(format!(
                    "tol: {name} must be a finite positive number, got {v}"
                )));
            }
            values.insert(key, v);
        }
        Ok(Tolerances { values })
    }

    pub fn get(&self, name: &str) -> f64 {
        *self
            .values
            .get(name)
            .unwrap_or_else(|| panic!("tolerance `{name}` is not in the registry"))
    }

    pub fn names() -> impl Iterator<Item = &'static str> {
        TOL_NAMES.iter().map(|&(n, _)| n)
    }
}

fn spectra_checks(cfg: &RunConfig, t: &Tolerances) -> Result<Vec<Check>, CliError> {
    let raw: SpectraInput = parse_input(cfg.input_path.as_deref())?;
    let job = raw.validate()?;
    let res = runners::spectra_residuals(job.trials, job.dim, job.matrix.as_ref(), cfg.seed);
    Ok(vec![
        Check::new(
            "spectral-mapping",
            "spectral mapping theorem",
            None,
            res.mapping,
            t.get("SPECTRUM_MAP_ABS"),
        ),
        Check::new(
            "gelfand-radius",
            "Gelfand formula",
            None,
            res.gelfand,
            t.get("GELFAND_NORMAL_ABS"),
        ),
        Check::new(
            "sqrt-series-vs-eigen",
            "continuous functional calculus",
            None,
            res.sqrt_agree,
            t.get("SQRT_AGREE"),
        ),
        Check::new(
            "positive-part-orthogonality",
            "Jordan decomposition",
            None,
            res.posneg,
            t.get("POSNEG_ORTHO_REL"),
        ),
    ])
}

fn gns_checks(cfg: &RunConfig, t: &Tolerances) -> Result<Vec<Check>, CliError> {
    let raw: GnsInput = parse_input(cfg.input_path.as_deref())?;
    raw.validate()?;
    let res = runners::gns_residuals(raw.trials, raw.ops_per_state, &raw.dims, cfg.seed);
    let com = runners::commutant_residuals(raw.generator_sets, raw.generator_dim, cfg.seed);
    Ok(vec![
        Check::new(
            "vector-expectation",
            "GNS construction",
            None,
            res.expectation,
            t.get("GNS_EXPECT_ABS"),
        ),
        Check::new(
            "irreducibility-matches-purity",
            "Schur's lemma",
            Some(res.purity_mismatches as f64),
            res.purity_mismatches as f64,
            0.0,
        ),
        Check::new(
            "double-commutant",
            "bicommutant theorem",
            None,
            com.double,
            t.get("SPAN_EQ_ABS"),
        ),
        Check::new(
            "triple-commutant",
            "bicommutant theorem",
            None,
            com.triple,
            t.get("SPAN_EQ_ABS"),
        ),
    ])
}

fn modular_checks(cfg: &RunConfig, t: &Tolerances) -> Result<Vec<Check>, CliError> {
    let raw: ModularInput = parse_input(cfg.input_path.as_deref())?;
    raw.validate()?;
    let res = runners::modular_residuals(raw.purifications, &raw.dims, cfg.seed);
    let kms = runners::kms_residual(raw.kms_states, raw.kms_pairs_per_state, &raw.dims, cfg.seed);
    Ok(vec![
        Check::new(
            "modular-identities",
            "Tomita-Takesaki theorem",
            None,
            res.identities,
            t.get("MODULAR_ID_ABS"),
        ),
        Check::new(
            "conjugation-maps-to-commutant",
            "Tomita-Takesaki theorem",
            None,
            res.conj_span,
            t.get("MODULAR_CONJ_SPAN_ABS"),
        ),
        Check::new(
            "flow-preserves-algebra",
            "Tomita-Takesaki theorem",
            None,
            res.flow_span,
            t.get("MODULAR_FLOW_SPAN_ABS"),
        ),
        Check::new(
            "delta-spectrum-ratios",
            "modular spectrum",
            None,
            res.ratio,
            t.get("MODULAR_ID_ABS"),
        ),
        Check::new("kms-beta-one", "KMS condition at beta = 1", None, kms, t.get("KMS_ABS")),
    ])
}

fn bell_checks(cfg: &RunConfig, t: &Tolerances) -> Result<Vec<Check>, CliError> {
    let raw: BellInput = parse_input(cfg.input_path.as_deref())?;
    raw.validate()?;
    let (value, singlet_res) = runners::singlet_outcome(raw.angles);
    let excess = runners::tsirelson_excess(raw.samples, cfg.seed);
    let (classical_value, classical_res) = runners::classical_residual();
    let con = runners::construction_outcome(raw.construction_pairs, cfg.seed);
    let (opt_value, opt_res) = runners::optimizer_outcome(raw.optimizer_budget, cfg.seed);
    Ok(vec![
        Check::new(
            "singlet-value",
            "CHSH inequality",
            Some(value),
            singlet_res,
            t.get("SINGLET_CLOSED_FORM_ABS"),
        ),
        Check::new("tsirelson-bound", "Tsirelson bound", None, excess, t.get("TSIRELSON_SLACK")),
        Check::new(
            "classical-bound",
            "classical correlation bound",
            Some(classical_value),
            classical_res,
            0.0,
        ),
        Check::new(
            "dichotomic-construction",
            "Summers-Werner construction",
            None,
            con.dichotomic_defect,
            t.get("MAXVIOL_CONSTRUCT_ABS"),
        ),
        Check::new(
            "extremal-norm",
            "Tsirelson bound",
            Some(con.norm_value),
            con.norm_residual,
            t.get("MAXVIOL_CONSTRUCT_ABS"),
        ),
        Check::new(
            "extremal-state",
            "Tsirelson bound",
            None,
            con.state_residual,
            t.get("MAXVIOL_STATE_ABS"),
        ),
        Check::new(
            "angle-optimizer",
            "CHSH inequality",
            Some(opt_value),
            opt_res,
            t.get("OPT_ABS"),
        ),
    ])
}

fn fock_checks(cfg: &RunConfig, t: &Tolerances) -> Result<Vec<Check>, CliError> {
    let raw: FockInput = parse_input(cfg.input_path.as_deref())?;
    let job = raw.validate()?;
    let gauss = runners::gaussian_outcome(job.modes, job.cap, &job.caps, &job.f);
    let ccr = runners::ccr_worst(6, cfg.seed);
    let car = runners::car_worst(&car_dims(job.fermi_dim), 6, cfg.seed);
    Ok(vec![
        Check::new(
            "vacuum-weyl-gaussian",
            "Fock vacuum characteristic function",
            Some(gauss.value),
            gauss.residual,
            t.get("VACUUM_WEYL_STD_ABS"),
        ),
        Check::new(
            "truncation-monotone",
            "truncation convergence",
            None,
            gauss.monotone_violation,
            0.0,
        ),
        Check::new(
            "ccr-guarded",
            "canonical commutation relation",
            None,
            ccr,
            t.get("CCR_ABS"),
        ),
        Check::new(
            "car-identities",
            "canonical anticommutation relation",
            None,
            car.relations,
            t.get("CAR_ABS"),
        ),
        Check::new("fermi-nilpotency", "Pauli exclusion", None, car.nilpotency, t.get("CAR_ABS")),
    ])
}

pub(crate) fn car_dims(fermi_dim: usize) -> Vec<usize> {
    let mut dims: Vec<usize> = [2usize, 4].iter().copied().filter(|&d| d < fermi_dim).collect();
    dims.push(fermi_dim);
    dims
}

fn net_checks(cfg: &RunConfig, t: &Tolerances) -> Result<Vec<Check>, CliError> {
    let raw: NetInput = parse_input(cfg.input_path.as_deref())?;
    raw.validate()?;
    let res = runners::net_residuals(raw.t_extent, raw.x_extent, raw.state_samples, cfg.seed);
    Ok(vec![
        Check::new("isotony", "isotony", None, res.isotony, t.get("NET_ISOTONY_ABS")),
        Check::new(
            "causality",
            "Einstein causality",
            None,
            res.causality,
            t.get("NET_COMMUTE_ABS"),
        ),
        Check::new("functor-laws", "functoriality", None, res.functor, t.get("FUNCTOR_ABS")),
        Check::new(
            "pullback-contravariance",
            "state pullback",
            None,
            res.pullback,
            t.get("PULLBACK_CONTRA_ABS"),
        ),
        Check::new(
            "transport-value",
            "Tsirelson bound",
            Some(res.transport_value),
            res.transport_residual,
            t.get("MAXVIOL_CONSTRUCT_ABS"),
        ),
        Check::new(
            "transport-agreement",
            "state pullback",
            None,
            res.transport_agreement,
            t.get("TRANSPORT_AGREE_ABS"),
        ),
        Check::new(
            "independence-restriction",
            "statistical independence",
            None,
            res.independence_restriction,
            t.get("INDEP_RESTRICT_ABS"),
        ),
        Check::new(
            "independence-factorization",
            "statistical independence",
            None,
            res.independence_factorization,
            t.get("INDEP_FACTOR_ABS"),
        ),
        Check::new("parseval", "Parseval frame", None, res.parseval, t.get("PARSEVAL_ABS")),
    ])
}

fn selftest_checks(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    if cfg.input_path.is_some() {
        return Err(CliError::Schema("input: selftest takes no input file".into()));
    }
    let mut checks = Vec::new();
    for group in acceptance_suite(cfg.seed) {
        checks.extend(group.checks);
    }
    Ok(checks)
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let tols = Tolerances::with_overrides(&cfg.tol_overrides)?;
    let checks = match cfg.subcommand {
        Subcommand::Spectra => spectra_checks(cfg, &tols)?,
        Subcommand::Gns => gns_checks(cfg, &tols)?,
        Subcommand::Modular => modular_checks(cfg, &tols)?,
        Subcommand::Bell => bell_checks(cfg, &tols)?,
        Subcommand::Fock => fock_checks(cfg, &tols)?,
        Subcommand::Net => net_checks(cfg, &tols)?,
        Subcommand::Selftest => selftest_checks(cfg)?,
    };
    Ok(Report::new(cfg.subcommand.name(), cfg.seed, &cfg.tol_overrides, checks))
}
