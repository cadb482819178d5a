use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tauprec_core::flipped::{flip_preconditioner, flipped_matrix_function, preconditioned_symmetric_eigs, FlipPrecondKind};
use tauprec_core::krylov::{minres, IdentityPreconditioner, Preconditioner, SolveOptions};
use tauprec_core::spectra::{cluster_outliers, symmetric_eigs, ClusterTarget};
use tauprec_core::Complex64;

use super::check_dense;
use super::spectrum::example;
use crate::config::RunConfig;
use crate::output::{num, CsvTable, Outputs};
use crate::CliError;

pub const DEFAULTS: &[(&str, &str)] = &[
    ("example", "polynomial"),
    ("size", "512"),
    ("precond", "none,abs-circ-composed,abs-h-circ"),
    ("tol", "1e-7"),
    ("max_iter", "1000"),
    ("eps", "0.1"),
    ("seed", "1"),
];

fn unit_clusters() -> ClusterTarget {
    ClusterTarget::Points(vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)])
}

/// Outliers from {-1, 1} at `eps` among real eigenvalues.
pub fn unit_outliers(eigs: &[f64], eps: f64) -> usize {
    let z: Vec<Complex64> = eigs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    cluster_outliers(&z, &unit_clusters(), eps)
}

pub fn run(cfg: &RunConfig) -> Result<(Outputs, String), CliError> {
    let ex = example(cfg)?;
    let n: usize = cfg.get("size")?;
    let eps: f64 = cfg.get("eps")?;
    check_dense(n)?;
    let opts = SolveOptions { tol: cfg.get("tol")?, max_iter: cfg.get("max_iter")? };
    let kinds: Vec<Option<FlipPrecondKind>> = cfg
        .list::<String>("precond")?
        .iter()
        .map(|s| match s.as_str() {
            "none" => Ok(None),
            other => FlipPrecondKind::parse(other)
                .map(Some)
                .ok_or_else(|| CliError::Usage(format!("unknown preconditioner {other:?}"))),
        })
        .collect::<Result<_, _>>()?;
    let a: DMatrix<f64> = flipped_matrix_function(&ex.h(), &ex.toeplitz(n)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.get("seed")?);
    let b: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();

    let mut spectra = CsvTable::new("precond_spectrum", &["precond", "index", "value"]);
    let mut runs = CsvTable::new(
        "minres",
        &["precond", "size", "iterations", "converged", "true_residual", "outliers", "clustered_fraction"],
    );
    let mut summary = format!("example = {}, size = {n}, eps = {eps}\n", ex.name());
    for kind in kinds {
        let (name, eigs, report) = match kind {
            None => ("none", symmetric_eigs(&a)?, minres(&a, &b, None, &IdentityPreconditioner, opts)?),
            Some(k) => {
                let p = flip_preconditioner(k, &ex.h(), &ex.symbol(n), n)?;
                let eigs = preconditioned_symmetric_eigs(&a, &p)?;
                let r = minres(&a, &b, None, &p as &dyn Preconditioner, opts)?;
                (k.name(), eigs, r)
            }
        };
        let out = unit_outliers(&eigs, eps);
        let frac = 1.0 - out as f64 / n as f64;
        for (i, v) in eigs.iter().enumerate() {
            spectra.push(vec![name.into(), i.to_string(), num(*v)]);
        }
        runs.push(vec![
            name.into(),
            n.to_string(),
            report.iterations.to_string(),
            report.converged.to_string(),
            num(report.true_residual),
            out.to_string(),
            num(frac),
        ]);
        summary += &format!(
            "{name:>18}: minres {} iterations (converged {}), outliers {out}, clustered {:.1}%\n",
            report.iterations,
            report.converged,
            100.0 * frac
        );
    }
    let mut outputs = Outputs::default();
    outputs.csv("spectra.csv", &spectra);
    outputs.csv("minres.csv", &runs);
    outputs.text("report.txt", summary.clone());
    Ok((outputs, summary))
}
