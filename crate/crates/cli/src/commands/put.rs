use tauprec_amput::{
    brennan_schwartz_adjusted, convergence_slope, mc_simulate, perpetual_put_boundary, pia, smooth_pasting_residual,
    Boundary, PiaOptions, PutGrid, PutParams,
};

use crate::config::RunConfig;
use crate::output::{num, opt, CsvTable, Outputs};
use crate::reference::{PUT_BOUNDARY, PUT_SIMULATION};
use crate::CliError;

pub const DEFAULTS: &[(&str, &str)] = &[
    ("r", "0.1"),
    ("sigma", "0.3"),
    ("strike", "100"),
    ("horizon", "1"),
    ("dx", "0.05"),
    ("dt", "0.0025"),
    ("b0", "0.85"),
    ("tol", "1e-6"),
    ("max_iter", "50"),
    ("mc_paths", "0"),
    ("mc_tau", "0.5"),
    ("mc_substeps", "10"),
    ("seed", "1"),
];

/// Times to expiry at which the boundary is tabulated.
pub fn report_times() -> Vec<f64> {
    PUT_BOUNDARY.iter().map(|r| r.0).collect()
}

pub fn run(cfg: &RunConfig) -> Result<(Outputs, String), CliError> {
    let params = PutParams {
        r: cfg.get("r")?,
        sigma: cfg.get("sigma")?,
        strike: cfg.get("strike")?,
        horizon: cfg.get("horizon")?,
    };
    params.validate()?;
    let dx: f64 = cfg.get("dx")?;
    let grid = PutGrid { dt: cfg.get("dt")?, ..PutGrid::standard(&params, dx) };
    grid.validate(&params)?;
    let mut summary = String::new();
    if !grid.is_accurate() {
        summary += &format!("warning: dt = {} exceeds dx^2 = {}\n", grid.dt, dx * dx);
    }
    let level: f64 = cfg.get("b0")?;
    let b0 = Boundary::constant(&params, &grid, level * params.strike);
    let opts = PiaOptions { tol: cfg.get("tol")?, max_iter: cfg.get("max_iter")? };
    let res = pia(&params, &grid, &b0, opts)?;
    let bs = brennan_schwartz_adjusted(&params, &grid)?;
    let defaults = params == PutParams { r: 0.1, sigma: 0.3, strike: 100.0, horizon: 1.0 };

    let mut table = CsvTable::new(
        "put_boundary",
        &["tau", "pia", "brennan_schwartz", "brennan_schwartz_unadjusted", "ref_pia", "ref_brennan_schwartz"],
    );
    summary += "tau      PIA       adj. BS   (reference)\n";
    for (k, &tau) in report_times().iter().enumerate() {
        if tau > params.horizon {
            continue;
        }
        let (rp, rb) = if defaults { (Some(PUT_BOUNDARY[k].1), Some(PUT_BOUNDARY[k].2)) } else { (None, None) };
        let (p, b) = (res.boundary.at(tau), bs.adjusted.at(tau));
        table.push(vec![num(tau), num(p), num(b), num(bs.unadjusted.at(tau)), opt(rp), opt(rb)]);
        summary += &format!(
            "{tau:.4}   {p:.4}   {b:.4}   {}\n",
            rp.zip(rb).map_or(String::new(), |(x, y)| format!("({x:.4}, {y:.4})"))
        );
    }

    let mut nodes = CsvTable::new("put_boundary_nodes", &["index", "tau", "boundary"]);
    for (i, v) in res.boundary.values.iter().enumerate() {
        nodes.push(vec![i.to_string(), num(i as f64 * res.boundary.dt), num(*v)]);
    }

    let errors = res.trace.errors_to_final();
    let sampled = res.trace.sampled_errors(&report_times());
    let mut trace = CsvTable::new(
        "pia_trace",
        &["iteration", "error_to_final", "sampled_error_to_final", "boundary_change", "value_change", "min_value_increment", "smooth_pasting"],
    );
    for (k, e) in errors.iter().enumerate() {
        let at = |v: &Vec<f64>| opt(v.get(k).copied());
        trace.push(vec![
            k.to_string(),
            num(*e),
            num(sampled[k]),
            at(&res.trace.boundary_change),
            at(&res.trace.value_change),
            at(&res.trace.min_value_increment),
            at(&res.trace.smooth_pasting),
        ]);
    }
    let slope = convergence_slope(&errors, dx * dx, 1.0);
    summary += &format!(
        "iterations = {}\nsmooth_pasting_residual = {:.4}\nworst_value_decrease = {:.4e} (bound {:.4e})\nconvergence_slope = {}\nperpetual_boundary = {:.4}\nfar_boundary = {:.4}\n",
        res.iterations,
        smooth_pasting_residual(&params, &res.surface, &res.boundary),
        res.trace.worst_monotonicity_violation(),
        -10.0 * dx * dx,
        slope.map_or("n/a".into(), |s| format!("{s:.3}")),
        perpetual_put_boundary(&params),
        res.boundary.values.last().copied().unwrap_or(f64::NAN),
    );

    let mut out = Outputs::default();
    out.csv("boundary.csv", &table);
    out.csv("boundary_nodes.csv", &nodes);
    out.csv("trace.csv", &trace);

    let paths: usize = cfg.get("mc_paths")?;
    if paths > 0 {
        let tau0: f64 = cfg.get("mc_tau")?;
        if !(tau0 > 0.0 && tau0 <= params.horizon) {
            return Err(CliError::Usage(format!("mc_tau {tau0} outside (0, horizon]")));
        }
        let sub: usize = cfg.get("mc_substeps")?;
        let seed: u64 = cfg.get("seed")?;
        let i = (tau0 / grid.dt).round() as usize;
        let mut mc = CsvTable::new("put_mc", &["s0", "pia_value", "mc_value", "stderr", "paths"]);
        summary += "S0       PIA value  MC value  stderr\n";
        for (k, row) in PUT_SIMULATION.iter().enumerate() {
            let s0 = row.0;
            let est = mc_simulate(&params, &res.boundary, s0, tau0, paths, grid.dt / sub.max(1) as f64, seed + k as u64);
            let v = res.surface.at(i, s0);
            mc.push(vec![num(s0), num(v), num(est.mean), num(est.stderr), paths.to_string()]);
            summary += &format!("{s0:<8.2} {v:<10.4} {:<9.4} {:.4}\n", est.mean, est.stderr);
        }
        out.csv("mc.csv", &mc);
    }
    out.text("report.txt", summary.clone());
    Ok((out, summary))
}
