//! Projected implicit Euler (Brennan-Schwartz) with one local boundary
//! correction.

use crate::params::{Boundary, PutGrid, PutParams};
use crate::pia::boundary_derivatives;
use crate::surface::{bs_solve_above_boundary, stencil};
use crate::Result;

#[derive(Debug, Clone)]
pub struct BrennanSchwartz {
    /// First grid node where continuation beats exercise, per time node.
    pub unadjusted: Boundary,
    /// After one above-boundary solve and one local step.
    pub adjusted: Boundary,
}

/// Projected sweep on the uniform grid: eliminate the upper diagonal from
/// x_max downward, then substitute upward from x = 0 taking the maximum with
/// the payoff at each node.
pub fn brennan_schwartz_adjusted(params: &PutParams, grid: &PutGrid) -> Result<BrennanSchwartz> {
    params.validate()?;
    grid.validate(params)?;
    let nx = grid.nx();
    let nt = grid.nt(params.horizon);
    let (dx, dt) = (grid.dx, grid.dt);
    let half_s2 = 0.5 * params.sigma * params.sigma;
    let payoff: Vec<f64> = (0..=nx).map(|j| params.payoff(grid.x(j))).collect();
    let mut v = payoff.clone();
    let mut bvals = vec![params.strike; nt + 1];
    // Unknowns are nodes 1..=nx; node 0 holds V = K.
    let (d1, d2) = stencil(dx, dx);
    let mut lower = vec![0.0; nx + 1];
    let mut diag = vec![0.0; nx + 1];
    let mut upper = vec![0.0; nx + 1];
    for j in 1..=nx {
        if j == nx {
            diag[j] = 1.0 + params.r * dt;
            continue;
        }
        let x = grid.x(j);
        let (a, c) = (half_s2 * x * x, params.r * x);
        lower[j] = -dt * (a * d2[0] + c * d1[0]);
        diag[j] = 1.0 + params.r * dt - dt * (a * d2[1] + c * d1[1]);
        upper[j] = -dt * (a * d2[2] + c * d1[2]);
    }
    for i in 1..=nt {
        let mut rhs = v.clone();
        rhs[1] -= lower[1] * params.strike;
        let mut dd = diag.clone();
        // Eliminate the superdiagonal from the top.
        for j in (1..nx).rev() {
            let f = upper[j] / dd[j + 1];
            dd[j] -= f * lower[j + 1];
            rhs[j] -= f * rhs[j + 1];
        }
        v[0] = params.strike;
        let mut boundary_node = None;
        for j in 1..=nx {
            let below = if j > 1 { lower[j] * v[j - 1] } else { 0.0 };
            let cont = (rhs[j] - below) / dd[j];
            if cont >= payoff[j] {
                v[j] = cont;
                if boundary_node.is_none() {
                    boundary_node = Some(j);
                }
            } else {
                v[j] = payoff[j];
            }
        }
        bvals[i] = grid.x(boundary_node.unwrap_or(1)).min(params.strike);
    }
    let unadjusted = Boundary { dt, values: bvals };
    let surface = bs_solve_above_boundary(params, grid, &unadjusted)?;
    let mut adjusted = unadjusted.clone();
    for i in 1..=nt {
        let (vx, vxx) = boundary_derivatives(params, &surface, &unadjusted, i);
        if vxx > 0.0 && vxx.is_finite() {
            adjusted.values[i] = (unadjusted.values[i] - (1.0 + vx) / vxx).clamp(dx, params.strike);
        }
    }
    Ok(BrennanSchwartz { unadjusted, adjusted })
}
