use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("grid point {theta} lies outside the symbol domain")]
    Domain { theta: f64 },
    #[error("spectral norm estimate {norm} exceeds convergence radius {radius}")]
    Convergence { norm: f64, radius: f64 },
    #[error("function has a pole at eigenvalue index {index}")]
    Pole { index: usize },
    #[error("singular eigenvalue at index {index}")]
    Singular { index: usize },
    #[error("non-positive diagonal entry {value} at index {index}")]
    Definiteness { index: usize, value: f64 },
    #[error("zero pivot at row {index}")]
    ZeroPivot { index: usize },
    #[error("Krylov breakdown at iteration {iteration}")]
    Breakdown { iteration: usize },
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}
