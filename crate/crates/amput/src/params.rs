use crate::{PutError, Result};

/// Contract and market parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PutParams {
    pub r: f64,
    pub sigma: f64,
    pub strike: f64,
    pub horizon: f64,
}

impl PutParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.sigma > 0.0 && self.strike > 0.0 && self.horizon > 0.0) {
            return Err(PutError::InvalidParams(format!("{self:?}")));
        }
        Ok(())
    }

    pub fn payoff(&self, x: f64) -> f64 {
        (self.strike - x).max(0.0)
    }
}

/// Uniform asset grid x_j = j dx on [0, x_max] and time-to-expiry grid
/// tau_i = i dt on [0, horizon].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PutGrid {
    pub dx: f64,
    pub dt: f64,
    pub x_max: f64,
}

impl PutGrid {
    /// Grid with dt = dx^2 and x_max = 3K.
    pub fn standard(params: &PutParams, dx: f64) -> Self {
        Self { dx, dt: dx * dx, x_max: 3.0 * params.strike }
    }

    pub fn validate(&self, params: &PutParams) -> Result<()> {
        if !(self.dx > 0.0 && self.dt > 0.0) {
            return Err(PutError::InvalidParams("grid steps must be positive".into()));
        }
        if self.x_max < 3.0 * params.strike {
            return Err(PutError::InvalidParams(format!("x_max {} is below 3K", self.x_max)));
        }
        Ok(())
    }

    /// True when dt <= dx^2, the accuracy condition of the implicit scheme.
    pub fn is_accurate(&self) -> bool {
        self.dt <= self.dx * self.dx * (1.0 + 1e-12)
    }

    /// Index of the last asset node.
    pub fn nx(&self) -> usize {
        (self.x_max / self.dx).round() as usize
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx
    }

    /// Number of time steps to reach `horizon`.
    pub fn nt(&self, horizon: f64) -> usize {
        (horizon / self.dt).round().max(1.0) as usize
    }
}

/// Exercise boundary b(tau_i) at each time-to-expiry node, piecewise linear
/// in between. Index 0 is expiry, where b = K.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundary {
    pub dt: f64,
    pub values: Vec<f64>,
}

impl Boundary {
    /// Constant boundary `level` before expiry and K at expiry.
    pub fn constant(params: &PutParams, grid: &PutGrid, level: f64) -> Self {
        let nt = grid.nt(params.horizon);
        let mut values = vec![level; nt + 1];
        values[0] = params.strike;
        Self { dt: grid.dt, values }
    }

    pub fn validate(&self, params: &PutParams) -> Result<()> {
        for (index, &value) in self.values.iter().enumerate() {
            if !(value > 0.0 && value <= params.strike * (1.0 + 1e-12)) {
                return Err(PutError::BoundaryDomain { index, value });
            }
        }
        Ok(())
    }

    /// Linear interpolation at time to expiry `tau`.
    pub fn at(&self, tau: f64) -> f64 {
        let s = (tau / self.dt).max(0.0);
        let i = s.floor() as usize;
        if i + 1 >= self.values.len() {
            return *self.values.last().unwrap();
        }
        let w = s - i as f64;
        self.values[i] * (1.0 - w) + self.values[i + 1] * w
    }
}
