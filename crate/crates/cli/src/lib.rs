//! Batch front end for `flowcert`: parse a JSON run config, build a flow,
//! and run one study on it. Results land as JSON and CSV files in the
//! output directory.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 for configuration, parse or I/O errors.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod harness;
pub mod json;

pub use config::{parse_config, FlowConfig, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{}: {1}", .0.display())]
    Io(PathBuf, std::io::Error),
}

impl From<flowcert::Error> for CliError {
    fn from(e: flowcert::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub passed: bool,
    pub summary: String,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "flowcert", version, about = "Construct and certify exact Euler and Navier-Stokes flows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// Run configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Previously constructed solution (JSON), used instead of the config's flow.
    #[arg(long, global = true)]
    pub solution: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, env = "FLOWCERT_OUT")]
    pub out: Option<PathBuf>,
    /// Multiplies every tolerance.
    #[arg(long, global = true)]
    pub tolerance_scale: Option<f64>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Grid points per axis for `sample`.
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Check that the operator symbol satisfies x·P(x) = 0.
    ValidateSymbol,
    /// Build the configured flow and write solution.json.
    Construct,
    /// Run the verification suite for the flow's family.
    Verify,
    /// Dump u, vorticity and pressure on a grid as CSV.
    Sample,
    /// Path limits, double-limit certificate and random solutions.
    LimitStudy,
    /// Compare viscous and inviscid flows near the wall.
    Prandtl,
    /// Certify that the flow and its partner are distinct solutions.
    Nonuniqueness,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = commands::Context::new(&cli.common)?;
    match cli.command {
        Command::ValidateSymbol => commands::validate_symbol(&ctx),
        Command::Construct => commands::construct(&ctx),
        Command::Verify => commands::verify(&ctx),
        Command::Sample => commands::sample(&ctx),
        Command::LimitStudy => commands::limit_study(&ctx),
        Command::Prandtl => commands::prandtl(&ctx),
        Command::Nonuniqueness => commands::nonuniqueness(&ctx),
    }
}
