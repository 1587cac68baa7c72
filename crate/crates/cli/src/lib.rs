//! Configuration-driven front end: each subcommand resolves a [`RunConfig`],
//! computes in memory, checks its invariant gates and only then writes its
//! files and a checksummed manifest.

pub mod commands;
pub mod config;
pub mod output;
pub mod svg;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::RunConfig;

/// Manley–Rowe residual gate for every propagation run.
pub const MANLEY_ROWE_GATE: f64 = 1e-3;
/// |Σκₙ − 1| gate.
pub const KAPPA_SUM_GATE: f64 = 1e-9;
/// |‖f‖² − 1| gate.
pub const JCA_NORM_GATE: f64 = 1e-10;
/// Relative Schmidt reconstruction error gate.
pub const RECONSTRUCTION_GATE: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("computation failed: {0}")]
    ComputeFailed(String),
    #[error("invariant gate {name} failed: {value:e} exceeds {limit:e}")]
    GateFailed { name: &'static str, value: f64, limit: f64 },
}

impl From<autohom_core::Error> for CliError {
    fn from(e: autohom_core::Error) -> Self {
        CliError::ComputeFailed(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ConfigInvalid(_) => 2,
            CliError::ComputeFailed(_) => 3,
            CliError::GateFailed { .. } => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "autohom", version, about = "Group-velocity-matched frequency conversion toolkit")]
pub struct Cli {
    /// JSON run configuration; built-in defaults when absent.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads for scans; 0 uses every logical processor.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Group-velocity-matched operating points of every crystal and scheme.
    GvmSearch,
    /// Phase-matching angle or poling period versus input wavelength.
    PmTable,
    /// Joint coupling amplitude and its Schmidt decomposition.
    Jca,
    /// Split-step propagation of the configured pulses.
    Propagate,
    /// Output visibility versus input carrier.
    VisibilityScan,
    /// Conversion efficiency versus pump GDD and input bandwidth.
    EfficiencyScan,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::GvmSearch => "gvm-search",
            Command::PmTable => "pm-table",
            Command::Jca => "jca",
            Command::Propagate => "propagate",
            Command::VisibilityScan => "visibility-scan",
            Command::EfficiencyScan => "efficiency-scan",
        }
    }

    pub const ALL: [Command; 6] = [
        Command::GvmSearch,
        Command::PmTable,
        Command::Jca,
        Command::Propagate,
        Command::VisibilityScan,
        Command::EfficiencyScan,
    ];
}

/// Runs one command and returns the manifest path.
pub fn run(cli: &Cli) -> Result<PathBuf, CliError> {
    let config = RunConfig::load(cli.config.as_deref())?;
    run_with(cli.command, &config, &cli.out, cli.threads)
}

pub fn run_with(command: Command, config: &RunConfig, out: &std::path::Path, threads: usize) -> Result<PathBuf, CliError> {
    config.validate()?;
    let started = std::time::Instant::now();
    let artifacts = autohom_core::par::with_threads(threads, || commands::execute(command, config))?;
    let echo = serde_json::to_value(config).map_err(|e| CliError::ComputeFailed(e.to_string()))?;
    let manifest = output::RunManifest {
        command: command.name(),
        version: env!("CARGO_PKG_VERSION"),
        threads,
        wall_clock_s: started.elapsed().as_secs_f64(),
        config: &echo,
        files: Vec::new(),
    };
    artifacts.commit(out, manifest).map_err(|e| CliError::ComputeFailed(format!("{e:#}")))
}
