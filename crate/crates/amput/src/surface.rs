//! Implicit Euler solution of the Black-Scholes equation above a boundary.

use tauprec_core::algebras::TridiagonalOperator;

use crate::params::{Boundary, PutGrid, PutParams};
use crate::{PutError, Result};

/// Replication value U on the full grid: V above the boundary and the payoff
/// at or below it. `values[i][j]` is U(x_j, tau_i).
#[derive(Debug, Clone, PartialEq)]
pub struct ValueSurface {
    pub grid: PutGrid,
    pub values: Vec<Vec<f64>>,
}

impl ValueSurface {
    /// Linear interpolation in x at time node i.
    pub fn at(&self, i: usize, x: f64) -> f64 {
        let row = &self.values[i];
        let s = (x / self.grid.dx).max(0.0);
        let j = s.floor() as usize;
        if j + 1 >= row.len() {
            return *row.last().unwrap();
        }
        let w = s - j as f64;
        row[j] * (1.0 - w) + row[j + 1] * w
    }
}

/// First node strictly above the boundary.
pub(crate) fn first_node_above(grid: &PutGrid, b: f64) -> usize {
    let mut j = (b / grid.dx).floor() as usize + 1;
    while j > 1 && grid.x(j - 1) > b * (1.0 + 1e-14) {
        j -= 1;
    }
    while grid.x(j) <= b * (1.0 + 1e-14) {
        j += 1;
    }
    j
}

/// Three-point weights (left, centre, right) for the first and second
/// derivative at a node with neighbours hl to the left and hr to the right.
pub(crate) fn stencil(hl: f64, hr: f64) -> ([f64; 3], [f64; 3]) {
    let d1 = [-hr / (hl * (hl + hr)), (hr - hl) / (hl * hr), hl / (hr * (hl + hr))];
    let d2 = [2.0 / (hl * (hl + hr)), -2.0 / (hl * hr), 2.0 / (hr * (hl + hr))];
    (d1, d2)
}

/// Solves rV = V_t + rxV_x + sigma^2 x^2 V_xx / 2 for x > b(t) backward from
/// expiry. The boundary node uses the nonuniform stencil with V(b) = K - b;
/// at x_max both derivatives vanish.
pub fn bs_solve_above_boundary(params: &PutParams, grid: &PutGrid, boundary: &Boundary) -> Result<ValueSurface> {
    let init: Vec<f64> = (0..=grid.nx()).map(|j| params.payoff(grid.x(j))).collect();
    solve_with_terminal(params, grid, boundary, init)
}

/// As [`bs_solve_above_boundary`] with an explicit terminal row.
pub fn solve_with_terminal(
    params: &PutParams,
    grid: &PutGrid,
    boundary: &Boundary,
    terminal: Vec<f64>,
) -> Result<ValueSurface> {
    params.validate()?;
    grid.validate(params)?;
    boundary.validate(params)?;
    let nx = grid.nx();
    let nt = boundary.values.len() - 1;
    let (dx, dt) = (grid.dx, boundary.dt);
    let half_s2 = 0.5 * params.sigma * params.sigma;
    let mut values = Vec::with_capacity(nt + 1);
    values.push(terminal);
    for i in 1..=nt {
        let b = boundary.values[i];
        let j0 = first_node_above(grid, b);
        if j0 + 1 > nx {
            return Err(PutError::BoundaryDomain { index: i, value: b });
        }
        let m = nx - j0 + 1;
        let prev = &values[i - 1];
        let vb = params.strike - b;
        let mut lower = vec![0.0; m - 1];
        let mut diag = vec![0.0; m];
        let mut upper = vec![0.0; m - 1];
        let mut rhs = vec![0.0; m];
        for k in 0..m {
            let j = j0 + k;
            let x = grid.x(j);
            rhs[k] = prev[j];
            if j == nx {
                diag[k] = 1.0 + params.r * dt;
                continue;
            }
            let hl = if k == 0 { x - b } else { dx };
            let (d1, d2) = stencil(hl, dx);
            let (a, c) = (half_s2 * x * x, params.r * x);
            let w: [f64; 3] = std::array::from_fn(|t| -dt * (a * d2[t] + c * d1[t]));
            diag[k] = 1.0 + params.r * dt + w[1];
            upper[k] = w[2];
            if k == 0 {
                rhs[k] -= w[0] * vb;
            } else {
                lower[k - 1] = w[0];
            }
        }
        let v = TridiagonalOperator::new(lower, diag, upper)?.solve(&rhs)?;
        let mut row = Vec::with_capacity(nx + 1);
        for j in 0..j0 {
            row.push(params.payoff(grid.x(j)));
        }
        row.extend(v);
        values.push(row);
    }
    Ok(ValueSurface { grid: *grid, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencil_is_exact_for_quadratics() {
        let (hl, hr) = (0.013, 0.05);
        let (d1, d2) = stencil(hl, hr);
        let f = |x: f64| 3.0 + 2.0 * x - 5.0 * x * x;
        let v = [f(-hl), f(0.0), f(hr)];
        let fx: f64 = d1.iter().zip(&v).map(|(a, b)| a * b).sum();
        let fxx: f64 = d2.iter().zip(&v).map(|(a, b)| a * b).sum();
        assert!((fx - 2.0).abs() < 1e-9);
        assert!((fxx + 10.0).abs() < 1e-8);
    }

    #[test]
    fn first_node_is_strictly_above() {
        let g = PutGrid { dx: 0.05, dt: 0.0025, x_max: 300.0 };
        assert_eq!(first_node_above(&g, 80.0), 1601);
        assert_eq!(first_node_above(&g, 80.01), 1601);
        assert_eq!(first_node_above(&g, 79.99), 1600);
    }

    #[test]
    fn boundary_above_strike_rejected() {
        let p = PutParams { r: 0.1, sigma: 0.3, strike: 100.0, horizon: 0.01 };
        let g = PutGrid::standard(&p, 0.5);
        let mut b = Boundary::constant(&p, &g, 90.0);
        b.values[1] = 101.0;
        assert!(matches!(bs_solve_above_boundary(&p, &g, &b), Err(PutError::BoundaryDomain { index: 1, .. })));
    }
}
