//! Command-line driver: symbol spectra, preconditioner comparisons, the
//! fractional diffusion benchmarks and the American put solver.
//!
//! Every command resolves a [`config::RunConfig`] from built-in defaults, an
//! optional key=value file and the command-line flags, computes its results
//! in memory and writes them to the output directory only on success.

pub mod commands;
pub mod config;
pub mod output;
pub mod reference;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 ok, 1 numerical failure, 2 usage.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<tauprec_core::Error> for CliError {
    fn from(e: tauprec_core::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<tauprec_amput::PutError> for CliError {
    fn from(e: tauprec_amput::PutError) -> Self {
        match e {
            tauprec_amput::PutError::InvalidParams(m) => CliError::Usage(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tauprec", version, about = "Structured preconditioning experiments and American put pricing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// key=value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Problem size; comma-separated where the command sweeps sizes.
    #[arg(long, global = true)]
    pub size: Option<String>,
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    #[arg(long, global = true)]
    pub beta: Option<String>,
    /// Preconditioner name(s), comma-separated.
    #[arg(long, global = true)]
    pub precond: Option<String>,
    /// Any other key, as key=value; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Print the resolved plan and write nothing.
    #[arg(long, global = true)]
    pub dry_run: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Eigenvalues of Y_n h(T_n(f)) or singular values of h(T_n(f)) against symbol samples.
    Spectrum,
    /// MINRES with absolute-value circulant preconditioners.
    PrecondCompare,
    /// One-dimensional fractional diffusion benchmark.
    Fde1d,
    /// Two-dimensional fractional diffusion benchmark.
    Fde2d,
    /// American put exercise boundary by policy iteration.
    PutPia,
    /// Dense-oracle checks of the structured operators.
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::PrecondCompare => "precond-compare",
            Command::Fde1d => "fde1d",
            Command::Fde2d => "fde2d",
            Command::PutPia => "put-pia",
            Command::Selftest => "selftest",
        }
    }
}

/// Applies defaults, the config file and the flags, in that order.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::with_defaults(commands::defaults(cli.command));
    if let Some(path) = &cli.config {
        cfg.load_file(path)?;
    }
    let flags = [
        ("seed", cli.seed.map(|v| v.to_string())),
        ("tol", cli.tol.map(|v| v.to_string())),
        ("size", cli.size.clone()),
        ("alpha", cli.alpha.clone()),
        ("beta", cli.beta.clone()),
        ("precond", cli.precond.clone()),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    for kv in &cli.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        cfg.set(k.trim(), v.trim())?;
    }
    Ok(cfg)
}

/// Runs a parsed command line and returns the text to print.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let cfg = resolve_config(cli)?;
    if cli.dry_run {
        let mut s = format!("plan: {} -> {}\n", cli.command.name(), cli.out.display());
        for (k, v) in cfg.entries() {
            s += &format!("  {k} = {v}\n");
        }
        s += &format!("  files: {}\n", commands::planned_files(cli.command, &cfg)?.join(", "));
        return Ok(s);
    }
    let (outputs, summary) = commands::execute(cli.command, &cfg)?;
    let written = outputs.write_all(&cli.out)?;
    let mut s = summary;
    for p in written {
        s += &format!("wrote {}\n", p.display());
    }
    Ok(s)
}
