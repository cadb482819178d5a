//! Structured linear algebra for tau-preconditioned Toeplitz-like systems.
//!
//! The crate covers Toeplitz operators with FFT matvecs, generating symbols,
//! the circulant and tau (sine transform) algebras, preconditioned GMRES and
//! MINRES, and dense spectral diagnostics used to compare eigenvalue
//! distributions against symbol samples.

pub mod algebras;
pub mod error;
pub mod flipped;
pub mod grunwald;
pub mod krylov;
pub mod matfun;
pub mod spectra;
pub mod symbols;
pub mod toeplitz;

pub use error::{Error, Result};
pub use num_complex::Complex64;
