//! Time stepping with one preconditioned GMRES solve per step.

use std::time::{Duration, Instant};

use tauprec_core::krylov::{gmres, IdentityPreconditioner, Preconditioner, SolveOptions};
use tauprec_core::Result;

use crate::assemble::{rhs_1d, rhs_2d, Fde1dOperator, Fde2dOperator};
use crate::precond::{build_precond_2d, Precond1d, PrecondKind1d, PrecondKind2d};
use crate::problem::{DiffusionProblem1d, DiffusionProblem2d};

/// Summary of a full time integration.
#[derive(Debug, Clone)]
pub struct EvolutionReport {
    /// Solution at the final time on the interior nodes.
    pub u: Vec<f64>,
    /// GMRES iterations of each step.
    pub iterations: Vec<usize>,
    pub converged: bool,
    pub elapsed: Duration,
    /// Max-norm error against the exact solution at the final time, if known.
    pub max_error: Option<f64>,
}

impl EvolutionReport {
    pub fn mean_iterations(&self) -> f64 {
        if self.iterations.is_empty() {
            0.0
        } else {
            self.iterations.iter().sum::<usize>() as f64 / self.iterations.len() as f64
        }
    }
}

/// Implicit Euler integration of a one-dimensional problem.
pub fn solve_evolution_1d(p: &DiffusionProblem1d, kind: PrecondKind1d, opts: SolveOptions) -> Result<EvolutionReport> {
    p.validate()?;
    let start = Instant::now();
    let nodes = p.nodes();
    let mut u: Vec<f64> = nodes.iter().map(|&x| (p.initial)(x, 0.0)).collect();
    let mut iterations = Vec::with_capacity(p.steps);
    let mut converged = true;
    for m in 1..=p.steps {
        let op = Fde1dOperator::assemble(p, m)?;
        let pre = Precond1d::build(kind, &op)?;
        let b = rhs_1d(p, m, &u);
        let r = gmres(&op, &b, None, &pre, opts)?;
        converged &= r.converged;
        iterations.push(r.iterations);
        u = r.x;
    }
    let max_error = p.exact.as_ref().map(|ex| {
        nodes.iter().zip(&u).map(|(&x, &v)| (ex(x, p.horizon) - v).abs()).fold(0.0, f64::max)
    });
    Ok(EvolutionReport { u, iterations, converged, elapsed: start.elapsed(), max_error })
}

/// Crank-Nicolson integration of a two-dimensional problem.
pub fn solve_evolution_2d(p: &DiffusionProblem2d, kind: PrecondKind2d, opts: SolveOptions) -> Result<EvolutionReport> {
    p.validate()?;
    let start = Instant::now();
    let nodes = p.nodes();
    let mut u: Vec<f64> = nodes.iter().map(|&(x, y)| (p.initial)(x, y, 0.0)).collect();
    let mut iterations = Vec::with_capacity(p.steps);
    let mut converged = true;
    let dt = p.dt();
    for m in 1..=p.steps {
        let op = Fde2dOperator::step_matrix(p, m as f64 * dt)?;
        let b = rhs_2d(p, m, &u)?;
        let pre = build_precond_2d(kind, &op, p.alpha, p.beta)?;
        let pre: &dyn Preconditioner = match &pre {
            Some(k) => k,
            None => &IdentityPreconditioner,
        };
        let r = gmres(&op, &b, None, pre, opts)?;
        converged &= r.converged;
        iterations.push(r.iterations);
        u = r.x;
    }
    let max_error = p.exact.as_ref().map(|ex| {
        nodes.iter().zip(&u).map(|(&(x, y), &v)| (ex(x, y, p.horizon) - v).abs()).fold(0.0, f64::max)
    });
    Ok(EvolutionReport { u, iterations, converged, elapsed: start.elapsed(), max_error })
}
