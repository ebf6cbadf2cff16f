//! JSON input schemas for the subcommands. Every field is optional with a
//! documented default, so each subcommand also runs without an input file.
//! Validation failures name the offending field.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use oplab_core::mat::CMatrix;

use crate::run::CliError;

fn schema(msg: String) -> CliError {
    CliError::Schema(msg)
}

/// Matrices are arrays of rows; every entry is a `[re, im]` pair.
pub fn matrix_from_rows(field: &str, rows: &[Vec<[f64; 2]>]) -> Result<CMatrix, CliError> {
    let n = rows.len();
    if n == 0 {
        return Err(schema(format!("{field}: matrix must have at least one row")));
    }
    if n > 64 {
        return Err(schema(format!("{field}: dimension {n} exceeds the runner cap of 64")));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(schema(format!(
                "{field}: row {i} has {} entries, expected {n} (matrix must be square)",
                row.len()
            )));
        }
        for (j, e) in row.iter().enumerate() {
            if !e[0].is_finite() || !e[1].is_finite() {
                return Err(schema(format!("{field}: entry ({i}, {j}) is not finite")));
            }
        }
    }
    Ok(CMatrix::from_fn(n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

fn vector_from_pairs(field: &str, pairs: &[[f64; 2]]) -> Result<Vec<Complex64>, CliError> {
    for (i, e) in pairs.iter().enumerate() {
        if !e[0].is_finite() || !e[1].is_finite() {
            return Err(schema(format!("{field}: entry {i} is not finite")));
        }
    }
    Ok(pairs.iter().map(|e| Complex64::new(e[0], e[1])).collect())
}

fn bounded(field: &str, value: usize, lo: usize, hi: usize) -> Result<usize, CliError> {
    if value < lo || value > hi {
        return Err(schema(format!("{field}: {value} is outside the supported range {lo}..={hi}")));
    }
    Ok(value)
}

pub fn parse_input<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T, CliError> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| schema(format!("input: cannot read `{}`: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| schema(format!("input: {e}")))
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectraInput {
    /// random instances per check
    pub trials: usize,
    /// instance dimensions cycle over 2..=dim
    pub dim: usize,
    /// optional explicit matrix folded into the eigenvalue-based checks
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

impl Default for SpectraInput {
    fn default() -> Self {
        SpectraInput { trials: 60, dim: 5, matrix: None }
    }
}

pub struct SpectraJob {
    pub trials: usize,
    pub dim: usize,
    pub matrix: Option<CMatrix>,
}

impl SpectraInput {
    pub fn validate(&self) -> Result<SpectraJob, CliError> {
        Ok(SpectraJob {
            trials: bounded("trials", self.trials, 1, 100_000)?,
            dim: bounded("dim", self.dim, 2, 8)?,
            matrix: match &self.matrix {
                None => None,
                Some(rows) => Some(matrix_from_rows("matrix", rows)?),
            },
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GnsInput {
    /// random states driven through the representation
    pub trials: usize,
    /// random observables evaluated per state
    pub ops_per_state: usize,
    /// ambient dimensions the states cycle over
    pub dims: Vec<usize>,
    /// random generator sets for the commutant checks
    pub generator_sets: usize,
    /// largest ambient dimension for the generator sets
    pub generator_dim: usize,
}

impl Default for GnsInput {
    fn default() -> Self {
        GnsInput {
            trials: 24,
            ops_per_state: 60,
            dims: vec![2, 3, 4],
            generator_sets: 24,
            generator_dim: 6,
        }
    }
}

impl GnsInput {
    pub fn validate(&self) -> Result<(), CliError> {
        bounded("trials", self.trials, 1, 10_000)?;
        bounded("ops_per_state", self.ops_per_state, 1, 10_000)?;
        if self.dims.is_empty() {
            return Err(schema("dims: at least one dimension is required".into()));
        }
        for (i, &d) in self.dims.iter().enumerate() {
            if !(2..=4).contains(&d) {
                return Err(schema(format!("dims: entry {i} is {d}, supported range 2..=4")));
            }
        }
        bounded("generator_sets", self.generator_sets, 1, 10_000)?;
        bounded("generator_dim", self.generator_dim, 2, 6)?;
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModularInput {
    /// random faithful states run through the purification
    pub purifications: usize,
    /// ambient dimensions the states cycle over
    pub dims: Vec<usize>,
    /// thermal states for the equilibrium check
    pub kms_states: usize,
    /// random observable pairs per thermal state
    pub kms_pairs_per_state: usize,
}

impl Default for ModularInput {
    fn default() -> Self {
        ModularInput { purifications: 8, dims: vec![2, 3, 4], kms_states: 4, kms_pairs_per_state: 25 }
    }
}

impl ModularInput {
    pub fn validate(&self) -> Result<(), CliError> {
        bounded("purifications", self.purifications, 1, 1_000)?;
        if self.dims.is_empty() {
            return Err(schema("dims: at least one dimension is required".into()));
        }
        for (i, &d) in self.dims.iter().enumerate() {
            if !(2..=4).contains(&d) {
                return Err(schema(format!("dims: entry {i} is {d}, supported range 2..=4")));
            }
        }
        bounded("kms_states", self.kms_states, 1, 1_000)?;
        bounded("kms_pairs_per_state", self.kms_pairs_per_state, 1, 10_000)?;
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BellInput {
    /// measurement angles (a1, a2, b1, b2) for the singlet check
    pub angles: [f64; 4],
    /// random quadruples sampled against the quantum bound
    pub samples: usize,
    /// random projection pairs fed to the maximal-violation construction
    pub construction_pairs: usize,
    /// coordinate sweeps per restart of the angle optimizer
    pub optimizer_budget: usize,
}

impl Default for BellInput {
    fn default() -> Self {
        BellInput {
            angles: [0.0, FRAC_PI_4, PI, FRAC_PI_2],
            samples: 2_000,
            construction_pairs: 40,
            optimizer_budget: 4,
        }
    }
}

impl BellInput {
    pub fn validate(&self) -> Result<(), CliError> {
        for (i, a) in self.angles.iter().enumerate() {
            if !a.is_finite() {
                return Err(schema(format!("angles: entry {i} is not finite")));
            }
        }
        bounded("samples", self.samples, 1, 1_000_000)?;
        bounded("construction_pairs", self.construction_pairs, 1, 10_000)?;
        bounded("optimizer_budget", self.optimizer_budget, 1, 64)?;
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FockInput {
    /// one-particle dimension of the bosonic space
    pub modes: usize,
    /// particle-number cap for the Gaussian check
    pub cap: usize,
    /// cap grid for the convergence check, ascending
    pub caps: Vec<usize>,
    /// one-particle argument of the exponentiated field; defaults to the
    /// first basis vector
    pub f: Option<Vec<[f64; 2]>>,
    /// one-particle dimension of the fermionic space
    pub fermi_dim: usize,
}

impl Default for FockInput {
    fn default() -> Self {
        FockInput { modes: 1, cap: 25, caps: vec![5, 10, 15, 20, 25], f: None, fermi_dim: 4 }
    }
}

pub struct FockJob {
    pub modes: usize,
    pub cap: usize,
    pub caps: Vec<usize>,
    pub f: Vec<Complex64>,
    pub fermi_dim: usize,
}

impl FockInput {
    pub fn validate(&self) -> Result<FockJob, CliError> {
        let modes = bounded("modes", self.modes, 1, 3)?;
        let cap_max = match modes {
            1 => 40,
            2 => 15,
            _ => 10,
        };
        let cap = bounded("cap", self.cap, 1, cap_max)?;
        if self.caps.is_empty() {
            return Err(schema("caps: at least one cap is required".into()));
        }
        for (i, &c) in self.caps.iter().enumerate() {
            bounded("caps", c, 1, cap_max)?;
            if i > 0 && c <= self.caps[i - 1] {
                return Err(schema(format!("caps: entry {i} must increase, got {c}")));
            }
        }
        let f = match &self.f {
            None => {
                let mut v = vec![Complex64::new(0.0, 0.0); modes];
                v[0] = Complex64::new(1.0, 0.0);
                v
            }
            Some(pairs) => {
                if pairs.len() != modes {
                    return Err(schema(format!(
                        "f: has {} entries, expected modes = {modes}",
                        pairs.len()
                    )));
                }
                let v = vector_from_pairs("f", pairs)?;
                if v.iter().map(|z| z.norm_sqr()).sum::<f64>() == 0.0 {
                    return Err(schema("f: the zero vector is not a valid argument".into()));
                }
                v
            }
        };
        let fermi_dim = bounded("fermi_dim", self.fermi_dim, 1, 6)?;
        Ok(FockJob { modes, cap, caps: self.caps.clone(), f, fermi_dim })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NetInput {
    /// lattice extent in the time direction
    pub t_extent: i64,
    /// lattice extent in the space direction
    pub x_extent: i64,
    /// random target states per transport and pullback check
    pub state_samples: usize,
}

impl Default for NetInput {
    fn default() -> Self {
        NetInput { t_extent: 2, x_extent: 3, state_samples: 3 }
    }
}

impl NetInput {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.t_extent < 1 {
            return Err(schema(format!("t_extent: {} must be at least 1", self.t_extent)));
        }
        if self.x_extent < 2 {
            return Err(schema(format!(
                "x_extent: {} must be at least 2 (the transport checks need a spacelike pair)",
                self.x_extent
            )));
        }
        let points = self.t_extent * self.x_extent;
        if !(4..=6).contains(&points) {
            return Err(schema(format!(
                "t_extent*x_extent: lattice has {points} points, the runner supports 4..=6"
            )));
        }
        bounded("state_samples", self.state_samples, 1, 1_000)?;
        Ok(())
    }
}
