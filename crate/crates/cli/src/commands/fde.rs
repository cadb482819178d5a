use std::time::Instant;

use tauprec_core::krylov::{preconditioned_dense, IdentityPreconditioner, SolveOptions};
use tauprec_core::spectra::condition_number;
use tauprec_fde::problem::{constant_2d, example_1d, example_2d};
use tauprec_fde::{
    build_precond_2d, solve_evolution_1d, solve_evolution_2d, symmetric_preconditioned_eigs, Fde1dOperator,
    Fde2dOperator, Precond1d, PrecondKind1d, PrecondKind2d,
};

use crate::config::RunConfig;
use crate::output::{num, opt, CsvTable, Outputs};
use crate::reference::{fde1d_row, fde2d_row};
use crate::CliError;

pub const DEFAULTS_1D: &[(&str, &str)] = &[
    ("alpha", "1.2,1.5,1.8"),
    ("size", "64,128,256,512"),
    ("precond", "identity,circulant,full,tau,tri,alt"),
    ("tol", "1e-7"),
    ("max_iter", "2000"),
    ("kappa_cap", "512"),
];

pub const DEFAULTS_2D: &[(&str, &str)] = &[
    ("alpha", "1.8"),
    ("beta", "1.6,1.2"),
    ("size", "16,32"),
    ("precond", "identity,tau,hatted"),
    ("tol", "1e-7"),
    ("max_iter", "2000"),
    ("kappa_cap", "1024"),
];

fn opts(cfg: &RunConfig) -> Result<SolveOptions, CliError> {
    Ok(SolveOptions { tol: cfg.get("tol")?, max_iter: cfg.get("max_iter")? })
}

/// Averaged iterations and dense condition number of one 1D configuration.
#[derive(Debug, Clone)]
pub struct Fde1dRun {
    pub iterations: f64,
    pub converged: bool,
    pub millis: f64,
    pub kappa: Option<f64>,
    pub max_error: Option<f64>,
}

pub fn run_fde1d_case(alpha: f64, n_plus_1: usize, kind: PrecondKind1d, opts: SolveOptions, kappa_cap: usize) -> Result<Fde1dRun, CliError> {
    if n_plus_1 < 3 {
        return Err(CliError::Usage(format!("size n+1 = {n_plus_1} must be at least 3")));
    }
    let p = example_1d(alpha, n_plus_1 - 1);
    let start = Instant::now();
    let r = solve_evolution_1d(&p, kind, opts)?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let kappa = if n_plus_1 <= kappa_cap {
        let op = Fde1dOperator::assemble(&p, 1)?;
        let pre = Precond1d::build(kind, &op)?;
        Some(condition_number(&preconditioned_dense(&op, &pre)?)?)
    } else {
        None
    };
    Ok(Fde1dRun { iterations: r.mean_iterations(), converged: r.converged, millis, kappa, max_error: r.max_error })
}

fn reference_1d(alpha: f64, n_plus_1: usize, kind: PrecondKind1d) -> (Option<f64>, Option<f64>) {
    let Some(row) = fde1d_row(alpha, n_plus_1) else { return (None, None) };
    let v = match kind {
        PrecondKind1d::Identity => row.identity,
        PrecondKind1d::TauSymbol => row.tau,
        PrecondKind1d::FullSymbol => row.full,
        PrecondKind1d::Tridiagonal => row.tri,
        PrecondKind1d::AltSymbol => row.alt,
        PrecondKind1d::Circulant => return (None, None),
    };
    (Some(v.0), Some(v.1))
}

pub fn run_1d(cfg: &RunConfig) -> Result<(Outputs, String), CliError> {
    let alphas: Vec<f64> = cfg.list("alpha")?;
    let sizes: Vec<usize> = cfg.list("size")?;
    let kinds: Vec<PrecondKind1d> = cfg
        .list::<String>("precond")?
        .iter()
        .map(|s| PrecondKind1d::parse(s).ok_or_else(|| CliError::Usage(format!("unknown preconditioner {s:?}"))))
        .collect::<Result<_, _>>()?;
    let cap: usize = cfg.get("kappa_cap")?;
    let opts = opts(cfg)?;
    let mut table = CsvTable::new(
        "fde1d",
        &["alpha", "n_plus_1", "precond", "iterations", "ms", "kappa", "max_error", "converged", "ref_iterations", "ref_kappa"],
    );
    let mut summary = String::from("alpha  n+1  precond    it      ms     kappa   (reference it, kappa)\n");
    for &alpha in &alphas {
        for &np1 in &sizes {
            for &kind in &kinds {
                let r = run_fde1d_case(alpha, np1, kind, opts, cap)?;
                let (ri, rk) = reference_1d(alpha, np1, kind);
                table.push(vec![
                    num(alpha),
                    np1.to_string(),
                    kind.name().into(),
                    num(r.iterations),
                    num(r.millis),
                    opt(r.kappa),
                    opt(r.max_error),
                    r.converged.to_string(),
                    opt(ri),
                    opt(rk),
                ]);
                summary += &format!(
                    "{alpha:<5} {np1:<4} {:<9} {:>5.1} {:>8.1} {:>9} ({}, {})\n",
                    kind.name(),
                    r.iterations,
                    r.millis,
                    r.kappa.map_or("n/a".into(), |k| format!("{k:.1}")),
                    ri.map_or("-".into(), |v| format!("{v:.1}")),
                    rk.map_or("-".into(), |v| format!("{v:.1}")),
                );
            }
        }
    }
    let mut out = Outputs::default();
    out.csv("fde1d.csv", &table);
    out.text("report.txt", summary.clone());
    Ok((out, summary))
}

/// Result of one 2D configuration. The hatted preconditioner runs on the
/// constant-coefficient problem and also reports the bounds of its real
/// preconditioned spectrum.
#[derive(Debug, Clone)]
pub struct Fde2dRun {
    pub iterations: f64,
    pub converged: bool,
    pub millis: f64,
    pub kappa: Option<f64>,
    pub max_error: Option<f64>,
    pub bounds: Option<(f64, f64)>,
}

pub fn run_fde2d_case(
    alpha: f64,
    beta: f64,
    n: usize,
    kind: &str,
    opts: SolveOptions,
    kappa_cap: usize,
) -> Result<Fde2dRun, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("size {n} must be at least 2")));
    }
    let (p, k) = match kind {
        "identity" => (example_2d(alpha, beta, n), PrecondKind2d::Identity),
        "tau" => (example_2d(alpha, beta, n), PrecondKind2d::TauSymbol),
        "hatted" => (constant_2d(alpha, beta, n, 1.0, 1.0), PrecondKind2d::Hatted { d: 1.0, e: 1.0 }),
        other => return Err(CliError::Usage(format!("unknown preconditioner {other:?}"))),
    };
    let start = Instant::now();
    let r = solve_evolution_2d(&p, k, opts)?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let op = Fde2dOperator::step_matrix(&p, p.dt())?;
    let pre = build_precond_2d(k, &op, alpha, beta)?;
    let kappa = if n * n <= kappa_cap {
        let m = match &pre {
            Some(pre) => preconditioned_dense(&op, pre)?,
            None => preconditioned_dense(&op, &IdentityPreconditioner)?,
        };
        Some(condition_number(&m)?)
    } else {
        None
    };
    let bounds = match (&pre, kind) {
        (Some(pre), "hatted") if n * n <= kappa_cap => {
            let ev = symmetric_preconditioned_eigs(&op, pre)?;
            Some((ev[0], ev[ev.len() - 1]))
        }
        _ => None,
    };
    Ok(Fde2dRun { iterations: r.mean_iterations(), converged: r.converged, millis, kappa, max_error: r.max_error, bounds })
}

pub fn run_2d(cfg: &RunConfig) -> Result<(Outputs, String), CliError> {
    let alphas: Vec<f64> = cfg.list("alpha")?;
    let betas: Vec<f64> = cfg.list("beta")?;
    let sizes: Vec<usize> = cfg.list("size")?;
    let kinds: Vec<String> = cfg.list("precond")?;
    let cap: usize = cfg.get("kappa_cap")?;
    let opts = opts(cfg)?;
    let mut table = CsvTable::new(
        "fde2d",
        &[
            "alpha", "beta", "n", "precond", "iterations", "ms", "kappa", "max_error", "converged", "lambda_min",
            "lambda_max", "ref_iterations", "ref_kappa",
        ],
    );
    let mut summary = String::from("alpha beta  n   precond    it      ms     kappa   (reference it, kappa)\n");
    for &alpha in &alphas {
        for &beta in &betas {
            for &n in &sizes {
                for kind in &kinds {
                    let r = run_fde2d_case(alpha, beta, n, kind, opts, cap)?;
                    let reference = fde2d_row(alpha, beta, n).and_then(|row| match kind.as_str() {
                        "identity" => Some(row.identity),
                        "tau" => Some(row.tau),
                        _ => None,
                    });
                    table.push(vec![
                        num(alpha),
                        num(beta),
                        n.to_string(),
                        kind.clone(),
                        num(r.iterations),
                        num(r.millis),
                        opt(r.kappa),
                        opt(r.max_error),
                        r.converged.to_string(),
                        opt(r.bounds.map(|b| b.0)),
                        opt(r.bounds.map(|b| b.1)),
                        opt(reference.map(|v| v.0)),
                        opt(reference.map(|v| v.1)),
                    ]);
                    summary += &format!(
                        "{alpha:<5} {beta:<5} {n:<3} {kind:<9} {:>5.1} {:>8.1} {:>9} {}{}\n",
                        r.iterations,
                        r.millis,
                        r.kappa.map_or("n/a".into(), |k| format!("{k:.2}")),
                        reference.map_or(String::new(), |v| format!("({:.1}, {:.1})", v.0, v.1)),
                        r.bounds.map_or(String::new(), |b| format!(" spectrum in [{:.4}, {:.4}]", b.0, b.1)),
                    );
                }
            }
        }
    }
    let mut out = Outputs::default();
    out.csv("fde2d.csv", &table);
    out.text("report.txt", summary.clone());
    Ok((out, summary))
}
