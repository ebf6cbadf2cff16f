//! Command line front end for the operator algebra workspace: drives each
//! layer from JSON inputs, emits deterministic reports, and bundles the
//! cross-layer acceptance checks behind one binary.

pub mod accept;
pub mod input;
pub mod report;
pub mod run;

mod runners;
mod sample;

pub use report::{Check, Report, SCHEMA_VERSION};
pub use run::{run, CliError, OutputMode, RunConfig, Subcommand, Tolerances, DEFAULT_SEED};
