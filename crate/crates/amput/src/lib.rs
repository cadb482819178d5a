//! American put exercise boundary by the Policy Iteration Algorithm.
//!
//! Each iteration solves the Black-Scholes equation by implicit Euler in the
//! continuation region above the current boundary, then moves the boundary to
//! the point of largest exercise gain, or by a local quadratic step when no
//! such gain exists. A projected Brennan-Schwartz sweep with the same local
//! correction and a Monte Carlo estimator serve as cross-checks.

pub mod brennan;
pub mod closed_form;
pub mod mc;
pub mod params;
pub mod pia;
pub mod surface;

pub use brennan::{brennan_schwartz_adjusted, BrennanSchwartz};
pub use closed_form::{european_put, perpetual_put_boundary};
pub use mc::{mc_simulate, McEstimate};
pub use params::{Boundary, PutGrid, PutParams};
pub use pia::{boundary_update, convergence_slope, pia, smooth_pasting_residual, PiaOptions, PiaResult, PiaTrace};
pub use surface::{bs_solve_above_boundary, ValueSurface};

use thiserror::Error;

pub type Result<T> = std::result::Result<T, PutError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PutError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("boundary value {value} at time node {index} lies outside (0, K]")]
    BoundaryDomain { index: usize, value: f64 },
    #[error("policy iteration did not converge in {iterations} iterations (last change {change})")]
    NonConvergence { iterations: usize, change: f64 },
    #[error(transparent)]
    Linear(#[from] tauprec_core::Error),
}
