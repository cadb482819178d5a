//! Toeplitz operators T_n(f) with entries a_{i-j}, applied through a
//! length-2n circulant embedding.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::{Error, Result};

/// Dense-free Toeplitz operator holding a_{-(n-1)}..a_{n-1}.
#[derive(Clone)]
pub struct ToeplitzOperator {
    n: usize,
    coeffs: Vec<Complex64>,
    embed_eigs: Vec<Complex64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for ToeplitzOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ToeplitzOperator").field("n", &self.n).finish()
    }
}

impl ToeplitzOperator {
    /// Builds from coefficients ordered a_{-(n-1)}, ..., a_0, ..., a_{n-1}.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "expected 2n-1 coefficients, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("Toeplitz coefficient".into()));
        }
        let n = (coeffs.len() + 1) / 2;
        let m = 2 * n;
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(m);
        let inv = planner.plan_fft_inverse(m);
        // First column of the embedding circulant: a_0..a_{n-1}, 0, a_{-(n-1)}..a_{-1}.
        let mut col = vec![Complex64::new(0.0, 0.0); m];
        for k in 0..n {
            col[k] = coeffs[n - 1 + k];
        }
        for k in 1..n {
            col[m - k] = coeffs[n - 1 - k];
        }
        fwd.process(&mut col);
        Ok(Self { n, coeffs, embed_eigs: col, fwd, inv })
    }

    /// Builds from real coefficients ordered a_{-(n-1)}..a_{n-1}.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Builds from a coefficient function a(k) for |k| < n.
    pub fn from_fn(n: usize, a: impl Fn(i64) -> Complex64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("size must be positive".into()));
        }
        let n = n as i64;
        Self::new((-(n - 1)..n).map(a).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coefficient a_k for |k| < n.
    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs[(k + self.n as i64 - 1) as usize]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Operator with entries a_{j-i}.
    pub fn transpose(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c).expect("transpose of a valid operator")
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        let m = 2 * self.n;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        buf[..self.n].copy_from_slice(x);
        self.fwd.process(&mut buf);
        for (b, e) in buf.iter_mut().zip(&self.embed_eigs) {
            *b *= e;
        }
        self.inv.process(&mut buf);
        let scale = 1.0 / m as f64;
        Ok(buf[..self.n].iter().map(|v| v * scale).collect())
    }

    /// Real matvec; the imaginary part of the product is discarded.
    pub fn apply_real(&self, x: &[f64]) -> Result<Vec<f64>> {
        let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(self.apply(&xc)?.into_iter().map(|v| v.re).collect())
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| self.coeff(i as i64 - j as i64))
    }

    pub fn to_dense_real(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| self.coeff(i as i64 - j as i64).re)
    }
}

/// Applies the flip matrix Y_n, reversing entry order.
pub fn flip_apply<T: Copy>(x: &[T]) -> Vec<T> {
    x.iter().rev().copied().collect()
}

/// Fourier coefficients a_{-(n-1)}..a_{n-1} of a 2pi-periodic function,
/// computed from `m` equispaced samples by one FFT.
///
/// Exact for trigonometric polynomials of degree below m/2; otherwise each
/// coefficient carries the alias sum of a_{k + lm}, l != 0.
pub fn fourier_coeffs_fft_with(
    f: impl Fn(f64) -> Complex64,
    n: usize,
    m: usize,
) -> Result<Vec<Complex64>> {
    if n == 0 || m < 2 * n - 1 {
        return Err(Error::InvalidArgument(format!(
            "need m >= 2n-1 samples, got n={n}, m={m}"
        )));
    }
    let mut buf: Vec<Complex64> = (0..m).map(|j| f(2.0 * PI * j as f64 / m as f64)).collect();
    if buf.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NonFinite("symbol sample".into()));
    }
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    let n = n as i64;
    Ok((-(n - 1)..n)
        .map(|k| buf[k.rem_euclid(m as i64) as usize] * scale)
        .collect())
}

/// Fourier coefficients with the default 2n sampling points.
pub fn fourier_coeffs_fft(f: impl Fn(f64) -> Complex64, n: usize) -> Result<Vec<Complex64>> {
    fourier_coeffs_fft_with(f, n, 2 * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn matvec_matches_dense() {
        let t = ToeplitzOperator::from_fn(7, |k| Complex64::new(k as f64 * 0.3 + 1.0, (k * k) as f64 * 0.1)).unwrap();
        let x: Vec<Complex64> = (0..7).map(|i| Complex64::new(i as f64 - 2.0, 0.5 * i as f64)).collect();
        let y = t.apply(&x).unwrap();
        let d = t.to_dense();
        for i in 0..7 {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..7 {
                s += d[(i, j)] * x[j];
            }
            assert!((s - y[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn trig_polynomial_coefficients_are_exact() {
        // f = 1 + 2cos(theta) has a_0 = 1, a_{+-1} = 1.
        let a = fourier_coeffs_fft(|t| c(1.0 + 2.0 * t.cos()), 4).unwrap();
        let want = [0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0];
        for (x, w) in a.iter().zip(want) {
            assert!((x - c(w)).norm() < 1e-14);
        }
    }

    #[test]
    fn size_one_and_mismatch() {
        let t = ToeplitzOperator::from_real(&[3.0]).unwrap();
        assert_eq!(t.apply_real(&[2.0]).unwrap(), vec![6.0]);
        assert!(matches!(t.apply_real(&[1.0, 2.0]), Err(Error::DimensionMismatch { .. })));
        assert!(ToeplitzOperator::from_real(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn flip_reverses() {
        assert_eq!(flip_apply(&[1, 2, 3]), vec![3, 2, 1]);
    }
}
