//! Matrix algebras used as preconditioners: circulant, tau (DST-I diagonalized),
//! two-dimensional tau tensor products and tridiagonal matrices.

mod circulant;
mod dst;
mod tau;
mod tridiag;

pub use circulant::{optimal_frobenius_circulant, CirculantOperator};
pub use dst::{dst1_apply, dst1_dense, DstPlan};
pub use tau::{Kron2DTau, TauOperator};
pub use tridiag::TridiagonalOperator;
