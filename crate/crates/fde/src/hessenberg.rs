//! Direct O(N log N) solve of -T_{alpha,N} x = b.
//!
//! With L the lower-triangular Toeplitz matrix of the order -alpha Grünwald
//! coefficients, L(-T) is lower Hessenberg with first column
//! -g^{(-alpha)}_{k+1} and ones on the superdiagonal, so the system reduces to
//! one Toeplitz product and a forward sweep.

use tauprec_core::grunwald::binomial_weights;
use tauprec_core::toeplitz::ToeplitzOperator;
use tauprec_core::{Error, Result};

pub fn hessenberg_direct_solve(alpha: f64, b: &[f64]) -> Result<Vec<f64>> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::InvalidArgument(format!("fractional order must lie in (1, 2), got {alpha}")));
    }
    let n = b.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty right-hand side".into()));
    }
    let ginv = binomial_weights(-alpha, n + 1);
    let lower = ToeplitzOperator::from_fn(n, |k| {
        num_complex::Complex64::new(if k >= 0 { ginv[k as usize] } else { 0.0 }, 0.0)
    })?;
    let c = lower.apply_real(b)?;
    let h0 = -ginv[n];
    if h0 == 0.0 {
        return Err(Error::ZeroPivot { index: n - 1 });
    }
    let mut x = vec![0.0; n];
    x[0] = c[n - 1] / h0;
    for k in 0..n - 1 {
        x[k + 1] = c[k] + ginv[k + 1] * x[0];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assemble::grunwald_matrix;

    #[test]
    fn matches_dense_solve() {
        for n in [1, 2, 7, 40] {
            let t = grunwald_matrix(1.6, n).unwrap().to_dense_real();
            let b: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 * 0.3).sin()).collect();
            let x = hessenberg_direct_solve(1.6, &b).unwrap();
            let r = -(t * nalgebra::DVector::from_vec(x)) - nalgebra::DVector::from_vec(b.clone());
            assert!(r.amax() < 1e-10, "n = {n}: {}", r.amax());
        }
    }

    #[test]
    fn scalar_case() {
        let x = hessenberg_direct_solve(1.5, &[3.0]).unwrap();
        assert!((x[0] - 3.0 / -1.5).abs() < 1e-15);
    }
}
