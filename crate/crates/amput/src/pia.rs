//! Policy iteration for the exercise boundary.

use crate::params::{Boundary, PutGrid, PutParams};
use crate::surface::{bs_solve_above_boundary, first_node_above, ValueSurface};
use crate::{PutError, Result};

/// Derivatives of V at the boundary of time node i: (V_x, V_xx), with V_x
/// from a one-sided three-point formula and V_xx from the PDE.
pub fn boundary_derivatives(params: &PutParams, surface: &ValueSurface, boundary: &Boundary, i: usize) -> (f64, f64) {
    let grid = &surface.grid;
    let b = boundary.values[i];
    let row = &surface.values[i];
    let mut j = first_node_above(grid, b);
    if grid.x(j) - b < 0.1 * grid.dx {
        j += 1;
    }
    let (h1, h2) = (grid.x(j) - b, grid.x(j + 1) - b);
    let vb = params.strike - b;
    let vx = -(h1 + h2) / (h1 * h2) * vb + h2 / (h1 * (h2 - h1)) * row[j] - h1 / (h2 * (h2 - h1)) * row[j + 1];
    let b_tau = if i > 0 { (b - boundary.values[i - 1]) / boundary.dt } else { 0.0 };
    let vt = b_tau * (1.0 + vx);
    let vxx = (params.r * vb - vt - params.r * b * vx) / (0.5 * params.sigma * params.sigma * b * b);
    (vx, vxx)
}

/// Greedy boundary update. At each time node the boundary moves to the grid
/// point maximizing (K - x)^+ - V when that gain is positive; otherwise it
/// takes the local step b - (1 + V_x)/V_xx.
pub fn boundary_update(params: &PutParams, surface: &ValueSurface, boundary: &Boundary) -> Boundary {
    let grid = &surface.grid;
    let mut values = boundary.values.clone();
    values[0] = params.strike;
    for i in 1..values.len() {
        let b = boundary.values[i];
        let row = &surface.values[i];
        let j0 = first_node_above(grid, b);
        let (mut best, mut arg) = (0.0, None);
        for (j, &u) in row.iter().enumerate().skip(j0) {
            let x = grid.x(j);
            if x >= params.strike {
                break;
            }
            let gain = params.payoff(x) - u;
            if gain > best {
                best = gain;
                arg = Some(j);
            }
        }
        let arg = arg.map(|j| grid.x(j));
        let next = match arg {
            Some(x) => x,
            None => {
                let (vx, vxx) = boundary_derivatives(params, surface, boundary, i);
                if vxx > 0.0 && vxx.is_finite() {
                    b - (1.0 + vx) / vxx
                } else {
                    b
                }
            }
        };
        values[i] = next.clamp(grid.dx, params.strike);
    }
    Boundary { dt: boundary.dt, values }
}

/// max over time nodes i >= 1 of |V_x(b(tau_i)) + 1|.
pub fn smooth_pasting_residual(params: &PutParams, surface: &ValueSurface, boundary: &Boundary) -> f64 {
    (1..boundary.values.len())
        .map(|i| (boundary_derivatives(params, surface, boundary, i).0 + 1.0).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy)]
pub struct PiaOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PiaOptions {
    fn default() -> Self {
        Self { tol: 1e-6, max_iter: 50 }
    }
}

/// Per-iteration diagnostics.
#[derive(Debug, Clone, Default)]
pub struct PiaTrace {
    /// Boundary after each iteration, starting with the initial one.
    pub boundaries: Vec<Boundary>,
    /// ||b_{k+1} - b_k||_inf
    pub boundary_change: Vec<f64>,
    /// ||U_{k+1} - U_k||_inf
    pub value_change: Vec<f64>,
    /// min over the grid of U_{k+1} - U_k
    pub min_value_increment: Vec<f64>,
    pub smooth_pasting: Vec<f64>,
}

impl PiaTrace {
    /// ||b_k - b_final||_inf for every recorded boundary.
    pub fn errors_to_final(&self) -> Vec<f64> {
        let last = self.boundaries.last().expect("non-empty trace");
        self.boundaries
            .iter()
            .map(|b| b.values.iter().zip(&last.values).map(|(a, c)| (a - c).abs()).fold(0.0, f64::max))
            .collect()
    }

    /// max over the sample times of |b_k(tau) - b_final(tau)| for every
    /// recorded boundary, with linear interpolation between time nodes.
    pub fn sampled_errors(&self, times: &[f64]) -> Vec<f64> {
        let last = self.boundaries.last().expect("non-empty trace");
        self.boundaries
            .iter()
            .map(|b| times.iter().map(|&t| (b.at(t) - last.at(t)).abs()).fold(0.0, f64::max))
            .collect()
    }

    /// Most negative value increment over all iterations, or 0.
    pub fn worst_monotonicity_violation(&self) -> f64 {
        self.min_value_increment.iter().copied().fold(0.0, f64::min)
    }
}

/// Least-squares slope of ln e_{k+1} against ln e_k over the pairs with
/// lo <= e_k <= hi and e_{k+1} > 0. A slope near 2 indicates quadratic
/// convergence. `None` when fewer than two pairs qualify.
pub fn convergence_slope(errors: &[f64], lo: f64, hi: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = errors
        .windows(2)
        .filter(|w| w[0] >= lo && w[0] <= hi && w[1] > 0.0)
        .map(|w| (w[0].ln(), w[1].ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Debug, Clone)]
pub struct PiaResult {
    pub boundary: Boundary,
    pub surface: ValueSurface,
    pub iterations: usize,
    pub trace: PiaTrace,
}

fn diff_stats(a: &ValueSurface, b: &ValueSurface) -> (f64, f64) {
    let mut max_abs = 0.0f64;
    let mut min_inc = f64::INFINITY;
    for (ra, rb) in a.values.iter().zip(&b.values) {
        for (x, y) in ra.iter().zip(rb) {
            let d = y - x;
            max_abs = max_abs.max(d.abs());
            min_inc = min_inc.min(d);
        }
    }
    (max_abs, min_inc)
}

/// Runs policy iteration from `b0` until the boundary or the value surface
/// changes by at most `tol` in the max norm.
pub fn pia(params: &PutParams, grid: &PutGrid, b0: &Boundary, opts: PiaOptions) -> Result<PiaResult> {
    let mut boundary = b0.clone();
    boundary.values[0] = params.strike;
    let mut surface = bs_solve_above_boundary(params, grid, &boundary)?;
    let mut trace = PiaTrace { boundaries: vec![boundary.clone()], ..Default::default() };
    let mut change = f64::INFINITY;
    for it in 1..=opts.max_iter {
        let next = boundary_update(params, &surface, &boundary);
        let next_surface = bs_solve_above_boundary(params, grid, &next)?;
        change = next.values.iter().zip(&boundary.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let (vchange, min_inc) = diff_stats(&surface, &next_surface);
        trace.boundary_change.push(change);
        trace.value_change.push(vchange);
        trace.min_value_increment.push(min_inc);
        trace.smooth_pasting.push(smooth_pasting_residual(params, &next_surface, &next));
        trace.boundaries.push(next.clone());
        boundary = next;
        surface = next_surface;
        if change <= opts.tol || vchange <= opts.tol {
            return Ok(PiaResult { boundary, surface, iterations: it, trace });
        }
    }
    Err(PutError::NonConvergence { iterations: opts.max_iter, change })
}
