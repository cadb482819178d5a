use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tauprec_core::algebras::{dst1_dense, optimal_frobenius_circulant, CirculantOperator, DstPlan, Kron2DTau, TauOperator};
use tauprec_core::grunwald::grunwald_coeffs;
use tauprec_core::toeplitz::ToeplitzOperator;
use tauprec_core::Complex64;
use tauprec_fde::assemble::grunwald_matrix;
use tauprec_fde::hessenberg_direct_solve;

use crate::config::RunConfig;
use crate::output::Outputs;
use crate::CliError;

pub const DEFAULTS: &[(&str, &str)] = &[("seed", "7"), ("size", "256")];

/// Outcome of one dense comparison.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub error: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error <= self.tol
    }
}

fn rel(a: &[f64], b: &[f64]) -> f64 {
    let d = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    d / b.iter().map(|x| x.abs()).fold(1.0, f64::max)
}

fn random(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn dense_apply(a: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (a * DVector::from_column_slice(x)).as_slice().to_vec()
}

fn dense_solve(a: &DMatrix<f64>, b: &[f64]) -> Result<Vec<f64>, CliError> {
    a.clone()
        .lu()
        .solve(&DVector::from_column_slice(b))
        .map(|x| x.as_slice().to_vec())
        .ok_or_else(|| CliError::Numerical("dense oracle matrix is singular".into()))
}

/// Runs every structured operator against its dense counterpart.
pub fn run_checks(seed: u64, n: usize) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut push = |name: String, error: f64, tol: f64| checks.push(Check { name, error, tol });

    let coeffs = random(&mut rng, 2 * n - 1);
    let t = ToeplitzOperator::from_real(&coeffs)?;
    let x = random(&mut rng, n);
    push(format!("toeplitz matvec n={n}"), rel(&t.apply_real(&x)?, &dense_apply(&t.to_dense_real(), &x)), 1e-10);

    let mut col = random(&mut rng, n);
    col[0] += 2.0 * n as f64;
    let c = CirculantOperator::from_first_column(&col.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>())?;
    push(format!("circulant solve n={n}"), rel(&c.solve_real(&x)?, &dense_solve(&c.to_dense_real(), &x)?), 1e-10);

    let ct = ToeplitzOperator::from_fn(n, |k| Complex64::new(col[k.rem_euclid(n as i64) as usize], 0.0))?;
    let fixed = optimal_frobenius_circulant(&ct).to_dense_real();
    push(format!("frobenius circulant fixed point n={n}"), (fixed - c.to_dense_real()).amax() / col[0], 1e-12);

    push(format!("dst-i n={n}"), rel(&DstPlan::new(n)?.apply(&x)?, &dense_apply(&dst1_dense(n), &x)), 1e-12);

    let diag: Vec<f64> = random(&mut rng, n).iter().map(|v| 1.5 + v).collect();
    let tau = TauOperator::new(diag)?;
    push(format!("tau solve n={n}"), rel(&tau.solve(&x)?, &dense_solve(&tau.to_dense(), &x)?), 1e-10);

    let (n1, n2) = (16, 16);
    let d2: Vec<f64> = random(&mut rng, n1 * n2).iter().map(|v| 1.5 + v).collect();
    let k = Kron2DTau::new(n1, n2, d2.clone(), None)?;
    let s = dst1_dense(n2).kronecker(&dst1_dense(n1));
    let dense = &s * DMatrix::from_diagonal(&DVector::from_vec(d2)) * &s;
    let x2 = random(&mut rng, n1 * n2);
    push("kronecker tau solve 16x16".into(), rel(&k.solve(&x2)?, &dense_solve(&dense, &x2)?), 1e-10);

    for alpha in [1.2, 1.5, 1.8] {
        let b = random(&mut rng, n);
        let tm = -grunwald_matrix(alpha, n)?.to_dense_real();
        push(
            format!("hessenberg solve alpha={alpha} n={n}"),
            rel(&hessenberg_direct_solve(alpha, &b)?, &dense_solve(&tm, &b)?),
            1e-8,
        );
    }

    for alpha in [1.1, 1.5, 1.9] {
        let g = grunwald_coeffs(alpha, 10_000)?;
        let mut bad = (g[0] - 1.0).abs() + (g[1] + alpha).abs();
        let mut partial = g[0] + g[1];
        for k in 2..g.len() {
            partial += g[k];
            let violated = g[k] <= 0.0 || (k > 2 && g[k] > g[k - 1]) || partial >= 0.0;
            bad += f64::from(u8::from(violated));
        }
        let abs_sum: f64 = g.iter().map(|v| v.abs()).sum();
        push(format!("grunwald invariants alpha={alpha}"), bad + ((abs_sum - 2.0 * alpha).abs() - 1e-2).max(0.0), 1e-14);
    }
    Ok(checks)
}

pub fn run(cfg: &RunConfig) -> Result<(Outputs, String), CliError> {
    let n: usize = cfg.get("size")?;
    if !(2..=1024).contains(&n) {
        return Err(CliError::Usage(format!("selftest size {n} outside 2..=1024")));
    }
    let checks = run_checks(cfg.get("seed")?, n)?;
    let mut text = String::new();
    for c in &checks {
        text += &format!("{} {:<40} error {:.3e} (tol {:.0e})\n", if c.passed() { "ok  " } else { "FAIL" }, c.name, c.error, c.tol);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    if !failed.is_empty() {
        return Err(CliError::Numerical(format!("{} check(s) failed: {}\n{text}", failed.len(), failed.join(", "))));
    }
    let mut out = Outputs::default();
    out.text("selftest.txt", text.clone());
    Ok((out, text))
}
