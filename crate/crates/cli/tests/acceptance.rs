//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tauprec_amput::{
    brennan_schwartz_adjusted, convergence_slope, mc_simulate, perpetual_put_boundary, pia, smooth_pasting_residual,
    Boundary, PiaOptions, PiaResult, PutGrid, PutParams,
};
use tauprec_cli::commands::fde::{run_fde1d_case, run_fde2d_case};
use tauprec_cli::commands::precond::unit_outliers;
use tauprec_cli::commands::selftest::run_checks;
use tauprec_cli::reference::{fde1d_row, fde2d_row, PERPETUAL_BOUNDARY, PUT_BOUNDARY, PUT_SIMULATION, PUT_SIMULATION_TAU};
use tauprec_core::algebras::{optimal_frobenius_circulant, CirculantOperator};
use tauprec_core::flipped::{flip_preconditioner, flipped_matrix_function, preconditioned_symmetric_eigs, FlipPrecondKind, SpectralExample};
use tauprec_core::grunwald::grunwald_coeffs;
use tauprec_core::krylov::SolveOptions;
use tauprec_core::spectra::{distribution_compare, symmetric_eigs, CompareMode};
use tauprec_core::symbols::{FourierSymbol, SymbolGrid};
use tauprec_core::toeplitz::ToeplitzOperator;
use tauprec_core::Complex64;
use tauprec_fde::PrecondKind1d;

type Outcome = Result<(bool, String), String>;

struct Runner {
    failed: usize,
}

impl Runner {
    fn run(&mut self, id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && elapsed <= budget, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            self.failed += 1;
        }
        println!(
            "criterion {id:>2} {} {name}: {detail} [{:.1} s, budget {} s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn grunwald() -> Outcome {
    let mut worst_sum = 0.0f64;
    let mut bad = Vec::new();
    for i in 1..=9 {
        let alpha = 1.0 + 0.1 * i as f64;
        let g = grunwald_coeffs(alpha, 10_000).map_err(err)?;
        let mut ok = g[0] == 1.0 && (g[1] + alpha).abs() < 1e-15;
        let mut partial = g[0] + g[1];
        for k in 2..g.len() {
            partial += g[k];
            ok &= g[k] > 0.0 && (k == 2 || g[k] <= g[k - 1]) && partial < 0.0;
        }
        let dev = (g.iter().map(|v| v.abs()).sum::<f64>() - 2.0 * alpha).abs();
        worst_sum = worst_sum.max(dev);
        if !ok || dev > 1e-2 {
            bad.push(format!("{alpha:.1}"));
        }
    }
    Ok((bad.is_empty(), format!("worst |sum |g_k| - 2 alpha| = {worst_sum:.2e}, failing orders {bad:?}")))
}

fn structured() -> Outcome {
    let mut worst = (0.0f64, String::new());
    let mut failed = Vec::new();
    for (seed, n) in [(1, 17), (2, 64), (3, 256)] {
        for c in run_checks(seed, n).map_err(err)? {
            if c.error / c.tol > worst.0 {
                worst = (c.error / c.tol, c.name.clone());
            }
            if !c.passed() {
                failed.push(c.name);
            }
        }
    }
    Ok((failed.is_empty(), format!("worst error/tolerance {:.1e} ({}), failures {failed:?}", worst.0, worst.1)))
}

fn real_circulant(col: &[f64]) -> Result<CirculantOperator, String> {
    CirculantOperator::from_first_column(&col.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>()).map_err(err)
}

fn frobenius() -> Outcome {
    let n = 32;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut uniform = |m: usize| -> Vec<f64> { (0..m).map(|_| rng.random_range(-1.0..1.0)).collect() };
    let col = uniform(n);
    let c = real_circulant(&col)?;
    let t = ToeplitzOperator::from_fn(n, |k| Complex64::new(col[k.rem_euclid(n as i64) as usize], 0.0)).map_err(err)?;
    let fixed = (optimal_frobenius_circulant(&t).to_dense_real() - c.to_dense_real()).amax();

    let t = ToeplitzOperator::from_real(&uniform(2 * n - 1)).map_err(err)?;
    let td: DMatrix<f64> = t.to_dense_real();
    let best = (&td - optimal_frobenius_circulant(&t).to_dense_real()).norm();
    let mut beaten = 0;
    for _ in 0..100 {
        let other = real_circulant(&uniform(n))?.to_dense_real();
        if (&td - other).norm() < best {
            beaten += 1;
        }
    }
    Ok((
        fixed < 1e-12 && beaten == 0,
        format!("fixed-point error {fixed:.1e}, random circulants closer than optimum: {beaten}/100"),
    ))
}

fn flipped_eigs(ex: SpectralExample, n: usize) -> Result<(DMatrix<f64>, Vec<f64>), String> {
    let a = flipped_matrix_function(&ex.h(), &ex.toeplitz(n).map_err(err)?).map_err(err)?;
    let ev = symmetric_eigs(&a).map_err(err)?;
    Ok((a, ev))
}

fn symmetrized_outliers(ex: SpectralExample, n: usize, ev: &[f64], eps: f64) -> Result<usize, String> {
    let psi = FourierSymbol::compose(ex.h(), &ex.symbol(n)).symmetrized();
    Ok(distribution_compare(ev, &psi, SymbolGrid::Symmetrized(n), CompareMode::Eigenvalues, eps).map_err(err)?.outliers)
}

fn distribution() -> Outcome {
    let poly = SpectralExample::Polynomial;
    let (_, ev) = flipped_eigs(poly, 200)?;
    let poly_out = symmetrized_outliers(poly, 200, &ev, 0.5)?;

    let fin = SpectralExample::parse("finance").ok_or("finance example missing")?;
    let n = 100;
    let (a, ev) = flipped_eigs(fin, n)?;
    let fin_out = symmetrized_outliers(fin, n, &ev, 0.5)?;
    let mut pre = Vec::new();
    for kind in FlipPrecondKind::ALL {
        let p = flip_preconditioner(kind, &fin.h(), &fin.symbol(n), n).map_err(err)?;
        pre.push(unit_outliers(&preconditioned_symmetric_eigs(&a, &p).map_err(err)?, 0.5));
    }
    Ok((
        poly_out == 0 && fin_out == 0 && pre.iter().all(|&o| o <= 2),
        format!("polynomial n=200 outliers {poly_out}; finance n=100 outliers {fin_out}, preconditioned {pre:?}"),
    ))
}

fn clustering() -> Outcome {
    let ex = SpectralExample::Polynomial;
    let n = 512;
    let (a, _) = flipped_eigs(ex, n)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for kind in FlipPrecondKind::ALL {
        let p = flip_preconditioner(kind, &ex.h(), &ex.symbol(n), n).map_err(err)?;
        let out = unit_outliers(&preconditioned_symmetric_eigs(&a, &p).map_err(err)?, 0.1);
        let frac = 1.0 - out as f64 / n as f64;
        ok &= frac >= 0.95;
        parts.push(format!("{} {:.1}%", kind.name(), 100.0 * frac));
    }
    Ok((ok, format!("clustered within 0.1 of +-1: {}", parts.join(", "))))
}

fn within_kappa(got: Option<f64>, want: f64) -> bool {
    got.is_some_and(|k| (k - want).abs() <= 0.15 * want)
}

fn fde1d() -> Outcome {
    let opts = SolveOptions { tol: 1e-7, max_iter: 2000 };
    let mut misses = Vec::new();
    let mut worst_it = 0.0f64;
    let mut worst_kappa = 0.0f64;
    let mut ordering = true;
    for alpha in [1.2, 1.5, 1.8] {
        for np1 in [64, 128, 256, 512] {
            let row = fde1d_row(alpha, np1).ok_or("missing reference row")?;
            for (kind, want) in
                [(PrecondKind1d::TauSymbol, row.tau), (PrecondKind1d::FullSymbol, row.full), (PrecondKind1d::Tridiagonal, row.tri)]
            {
                let r = run_fde1d_case(alpha, np1, kind, opts, 512).map_err(err)?;
                let dit = (r.iterations - want.0).abs();
                worst_it = worst_it.max(dit);
                if let Some(k) = r.kappa {
                    worst_kappa = worst_kappa.max((k - want.1).abs() / want.1);
                }
                if dit > 2.0 || !within_kappa(r.kappa, want.1) || !r.converged {
                    misses.push(format!("{alpha}/{np1}/{}", kind.name()));
                }
                if np1 == 512 && kind == PrecondKind1d::TauSymbol {
                    let id = run_fde1d_case(alpha, np1, PrecondKind1d::Identity, opts, 0).map_err(err)?;
                    ordering &= r.millis < id.millis;
                }
            }
        }
    }
    Ok((
        misses.is_empty() && ordering,
        format!(
            "worst iteration gap {worst_it:.2}, worst kappa deviation {:.1}%, tau faster than identity at n+1=512: {ordering}, misses {misses:?}",
            100.0 * worst_kappa
        ),
    ))
}

fn fde2d() -> Outcome {
    let opts = SolveOptions { tol: 1e-7, max_iter: 2000 };
    let mut misses = Vec::new();
    let mut worst_it = 0.0f64;
    let mut worst_kappa = 0.0f64;
    let mut ordering = true;
    for beta in [1.6, 1.2] {
        for n in [16, 32] {
            let want = fde2d_row(1.8, beta, n).ok_or("missing reference row")?.tau;
            let r = run_fde2d_case(1.8, beta, n, "tau", opts, 1024).map_err(err)?;
            let dit = (r.iterations - want.0).abs();
            worst_it = worst_it.max(dit);
            if let Some(k) = r.kappa {
                worst_kappa = worst_kappa.max((k - want.1).abs() / want.1);
            }
            if dit > 2.0 || !within_kappa(r.kappa, want.1) || !r.converged {
                misses.push(format!("{beta}/{n}"));
            }
            if n == 32 {
                let id = run_fde2d_case(1.8, beta, n, "identity", opts, 0).map_err(err)?;
                ordering &= r.millis < id.millis;
            }
        }
    }
    Ok((
        misses.is_empty() && ordering,
        format!(
            "worst iteration gap {worst_it:.2}, worst kappa deviation {:.1}%, tau faster than identity at n=32: {ordering}, misses {misses:?}",
            100.0 * worst_kappa
        ),
    ))
}

fn hatted() -> Outcome {
    let opts = SolveOptions { tol: 1e-7, max_iter: 2000 };
    let mut lows = Vec::new();
    let mut highs = Vec::new();
    for n in [16, 24, 32] {
        let r = run_fde2d_case(1.8, 1.6, n, "hatted", opts, n * n).map_err(err)?;
        let (lo, hi) = r.bounds.ok_or("no spectrum bounds")?;
        lows.push(lo);
        highs.push(hi);
    }
    let spread = |v: &[f64]| {
        let (lo, hi) = v.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
        hi / lo - 1.0
    };
    let (sc, sh) = (spread(&lows), spread(&highs));
    Ok((
        lows.iter().all(|&c| c > 0.0) && sc <= 0.1 && sh <= 0.1,
        format!("c = {lows:.4?}, C = {highs:.4?}, relative spread {:.1}% / {:.1}%", 100.0 * sc, 100.0 * sh),
    ))
}

fn zhu() -> (PutParams, PutGrid) {
    let p = PutParams { r: 0.1, sigma: 0.3, strike: 100.0, horizon: 1.0 };
    (p, PutGrid::standard(&p, 0.05))
}

fn boundary_table(res: &PiaResult) -> Outcome {
    let (p, g) = zhu();
    let bs = brennan_schwartz_adjusted(&p, &g).map_err(err)?;
    let pia_dev = PUT_BOUNDARY.iter().map(|r| (res.boundary.at(r.0) - r.1).abs()).fold(0.0, f64::max);
    let bs_dev = PUT_BOUNDARY.iter().map(|r| (bs.adjusted.at(r.0) - r.2).abs()).fold(0.0, f64::max);

    let p10 = PutParams { horizon: 10.0, ..p };
    let g10 = PutGrid::standard(&p10, 0.1);
    let r10 = pia(&p10, &g10, &Boundary::constant(&p10, &g10, 0.85 * p.strike), PiaOptions::default()).map_err(err)?;
    let far = *r10.boundary.values.last().ok_or("empty boundary")?;
    let perpetual = perpetual_put_boundary(&p);
    Ok((
        pia_dev <= 0.05 && bs_dev <= 0.05 && (68.97..=69.5).contains(&far) && (perpetual - PERPETUAL_BOUNDARY).abs() < 1e-3,
        format!("max deviation PIA {pia_dev:.4}, Brennan-Schwartz {bs_dev:.4}; T=10 boundary {far:.4} vs perpetual {perpetual:.4}"),
    ))
}

fn diagnostics(res: &PiaResult) -> Outcome {
    let (p, g) = zhu();
    let bound = -10.0 * g.dx * g.dx;
    let worst = res.trace.worst_monotonicity_violation();
    let sp = smooth_pasting_residual(&p, &res.surface, &res.boundary);
    let slope = convergence_slope(&res.trace.errors_to_final(), g.dx * g.dx, 1.0);
    Ok((
        worst >= bound && sp <= 0.15 && slope.is_some_and(|s| s >= 1.5),
        format!(
            "worst value decrease {worst:.4} (bound {bound:.4}), smooth-pasting residual {sp:.4}, error slope {}",
            slope.map_or("n/a".into(), |s| format!("{s:.3}"))
        ),
    ))
}

fn monte_carlo(res: &PiaResult) -> Outcome {
    let (p, g) = zhu();
    let i = (PUT_SIMULATION_TAU / g.dt).round() as usize;
    let mut worst = 0.0f64;
    let mut misses = Vec::new();
    for (k, &(s0, _, sd)) in PUT_SIMULATION.iter().enumerate() {
        let est = mc_simulate(&p, &res.boundary, s0, PUT_SIMULATION_TAU, 100_000, g.dt / 10.0, 11 + k as u64);
        let diff = (est.mean - res.surface.at(i, s0)).abs();
        worst = worst.max(diff / (3.0 * sd));
        if diff > 3.0 * sd {
            misses.push(s0);
        }
    }
    Ok((misses.is_empty(), format!("worst |MC - PIA| / (3 sd) = {worst:.3}, misses {misses:?}")))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut r = Runner { failed: 0 };
    r.run(1, "Grunwald coefficient invariants", secs(1), grunwald);
    r.run(2, "structured operators against dense oracles", secs(30), structured);
    r.run(3, "optimal Frobenius circulant", secs(5), frobenius);
    r.run(4, "symmetrized eigenvalue distribution", secs(60), distribution);
    r.run(5, "preconditioned clustering at +-1", secs(120), clustering);
    r.run(6, "FDE 1D benchmark", secs(600), fde1d);
    r.run(7, "FDE 2D benchmark", secs(600), fde2d);
    r.run(8, "hatted preconditioner spectral bounds", secs(300), hatted);

    let (p, g) = zhu();
    let start = Instant::now();
    let res = pia(&p, &g, &Boundary::constant(&p, &g, 0.85 * p.strike), PiaOptions::default());
    let base = start.elapsed();
    match res {
        Ok(res) => {
            r.run(9, "American put boundary table", secs(300).saturating_sub(base), || boundary_table(&res));
            r.run(10, "policy iteration diagnostics", secs(300).saturating_sub(base), || diagnostics(&res));
            r.run(11, "Monte Carlo cross-check", secs(300), || monte_carlo(&res));
        }
        Err(e) => {
            for (id, name) in [(9, "American put boundary table"), (10, "policy iteration diagnostics"), (11, "Monte Carlo cross-check")] {
                r.run(id, name, secs(300), || Err(e.to_string()));
            }
        }
    }
    println!("{} of 11 criteria failed", r.failed);
    if r.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
