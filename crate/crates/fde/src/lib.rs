//! Space-fractional diffusion equations discretized with shifted Grünwald
//! formulas, and the preconditioners used to solve each time step by GMRES.
//!
//! The one-dimensional model is implicit Euler in time with first-order
//! shifted Grünwald differences; the two-dimensional model is Crank-Nicolson
//! with the second-order weighted formula.

pub mod assemble;
pub mod evolution;
pub mod hessenberg;
pub mod precond;
pub mod problem;

pub use assemble::{Fde1dOperator, Fde2dOperator};
pub use evolution::{solve_evolution_1d, solve_evolution_2d, EvolutionReport};
pub use hessenberg::hessenberg_direct_solve;
pub use precond::{build_precond_2d, symmetric_preconditioned_eigs, Precond1d, Precond2d, PrecondKind1d, PrecondKind2d};
pub use problem::{DiffusionProblem1d, DiffusionProblem2d};
pub use tauprec_core::{Error, Result};
