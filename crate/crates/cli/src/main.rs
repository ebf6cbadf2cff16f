use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand as ClapSubcommand, ValueEnum};

use oplab_cli::{run, CliError, OutputMode, RunConfig, Subcommand, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "oplab",
    about = "Deterministic verification reports for the operator algebra workspace",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// JSON input file; omitted means the documented defaults
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Report format
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: OutputArg,

    /// Seed for every random draw in the run
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Tolerance override NAME=VALUE; repeatable
    #[arg(long, global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,
}

#[derive(Debug, ClapSubcommand)]
enum Cmd {
    /// Eigenvalue layer: spectral mapping, limit radius, square roots
    Spectra,
    /// Representation layer: state fidelity, irreducibility, commutants
    Gns,
    /// Modular layer: conjugation, flow, spectrum, equilibrium
    Modular,
    /// Correlation layer: bounds, constructions, optimizer
    Bell,
    /// Occupation-number layer: vacuum expectations, CCR, CAR
    Fock,
    /// Net layer: isotony, causality, embeddings, transport
    Net,
    /// The full acceptance suite with pinned thresholds
    Selftest,
}

fn parse_tols(pairs: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    let mut map = BTreeMap::new();
    for pair in pairs {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Schema(format!("tol: expected NAME=VALUE, got `{pair}`")))?;
        let parsed: f64 = value
            .parse()
            .map_err(|_| CliError::Schema(format!("tol: `{value}` is not a number")))?;
        map.insert(name.to_string(), parsed);
    }
    Ok(map)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let subcommand = match cli.cmd {
        Cmd::Spectra => Subcommand::Spectra,
        Cmd::Gns => Subcommand::Gns,
        Cmd::Modular => Subcommand::Modular,
        Cmd::Bell => Subcommand::Bell,
        Cmd::Fock => Subcommand::Fock,
        Cmd::Net => Subcommand::Net,
        Cmd::Selftest => Subcommand::Selftest,
    };
    let tol_overrides = match parse_tols(&cli.tol) {
        Ok(map) => map,
        Err(CliError::Schema(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig {
        subcommand,
        input_path: cli.input,
        tol_overrides,
        seed: cli.seed,
        output: match cli.output {
            OutputArg::Text => OutputMode::Text,
            OutputArg::Json => OutputMode::Json,
        },
    };
    match run(&cfg) {
        Ok(report) => {
            match cfg.output {
                OutputMode::Text => print!("{}", report.to_text()),
                OutputMode::Json => print!("{}", report.to_json()),
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Schema(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
