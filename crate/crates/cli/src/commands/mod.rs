//! Subcommand implementations. Each returns its files and a console summary.

pub mod fde;
pub mod precond;
pub mod put;
pub mod selftest;
pub mod spectrum;

use crate::config::RunConfig;
use crate::output::Outputs;
use crate::{CliError, Command};

pub fn defaults(cmd: Command) -> &'static [(&'static str, &'static str)] {
    match cmd {
        Command::Spectrum => spectrum::DEFAULTS,
        Command::PrecondCompare => precond::DEFAULTS,
        Command::Fde1d => fde::DEFAULTS_1D,
        Command::Fde2d => fde::DEFAULTS_2D,
        Command::PutPia => put::DEFAULTS,
        Command::Selftest => selftest::DEFAULTS,
    }
}

pub fn planned_files(cmd: Command, cfg: &RunConfig) -> Result<Vec<&'static str>, CliError> {
    Ok(match cmd {
        Command::Spectrum => vec!["eigs.csv", "symbol.csv", "report.txt"],
        Command::PrecondCompare => vec!["spectra.csv", "minres.csv", "report.txt"],
        Command::Fde1d => vec!["fde1d.csv", "report.txt"],
        Command::Fde2d => vec!["fde2d.csv", "report.txt"],
        Command::PutPia => {
            let mut v = vec!["boundary.csv", "boundary_nodes.csv", "trace.csv"];
            if cfg.get::<usize>("mc_paths")? > 0 {
                v.push("mc.csv");
            }
            v.push("report.txt");
            v
        }
        Command::Selftest => vec!["selftest.txt"],
    })
}

pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<(Outputs, String), CliError> {
    match cmd {
        Command::Spectrum => spectrum::run(cfg),
        Command::PrecondCompare => precond::run(cfg),
        Command::Fde1d => fde::run_1d(cfg),
        Command::Fde2d => fde::run_2d(cfg),
        Command::PutPia => put::run(cfg),
        Command::Selftest => selftest::run(cfg),
    }
}

/// Largest matrix order for which dense eigen/singular value work is done.
pub const DENSE_CAP: usize = 2048;

fn check_dense(n: usize) -> Result<(), CliError> {
    if n == 0 || n > DENSE_CAP {
        return Err(CliError::Usage(format!("size {n} outside 1..={DENSE_CAP} for dense spectra")));
    }
    Ok(())
}
