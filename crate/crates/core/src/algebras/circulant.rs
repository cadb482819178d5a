use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::matfun::AnalyticFn;
use crate::toeplitz::ToeplitzOperator;
use crate::{Error, Result};

/// Relative floor below which a circulant eigenvalue is treated as zero.
const SINGULAR_FLOOR: f64 = 1e-13;

/// Circulant C = F^* diag(lambda) F stored by its eigenvalues, where
/// lambda is the DFT of the first column.
#[derive(Clone)]
pub struct CirculantOperator {
    eigenvalues: Vec<Complex64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for CirculantOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CirculantOperator").field("n", &self.eigenvalues.len()).finish()
    }
}

impl CirculantOperator {
    pub fn from_first_column(col: &[Complex64]) -> Result<Self> {
        if col.is_empty() {
            return Err(Error::InvalidArgument("empty circulant".into()));
        }
        let n = col.len();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let mut eig = col.to_vec();
        fwd.process(&mut eig);
        Ok(Self { eigenvalues: eig, fwd, inv })
    }

    pub fn from_eigenvalues(eigenvalues: Vec<Complex64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidArgument("empty circulant".into()));
        }
        let n = eigenvalues.len();
        let mut planner = FftPlanner::new();
        Ok(Self { eigenvalues, fwd: planner.plan_fft_forward(n), inv: planner.plan_fft_inverse(n) })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn first_column(&self) -> Vec<Complex64> {
        let mut c = self.eigenvalues.clone();
        self.inv.process(&mut c);
        let s = 1.0 / c.len() as f64;
        c.iter().map(|v| v * s).collect()
    }

    fn diag_op(&self, x: &[Complex64], op: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Vec<Complex64>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        let mut buf = x.to_vec();
        self.fwd.process(&mut buf);
        for (b, &l) in buf.iter_mut().zip(&self.eigenvalues) {
            *b = op(*b, l);
        }
        self.inv.process(&mut buf);
        let s = 1.0 / n as f64;
        Ok(buf.into_iter().map(|v| v * s).collect())
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.diag_op(x, |b, l| b * l)
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let max = self.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
        if let Some(index) = self.eigenvalues.iter().position(|l| l.norm() <= SINGULAR_FLOOR * max) {
            return Err(Error::Singular { index });
        }
        self.diag_op(b, |b, l| b / l)
    }

    pub fn apply_real(&self, x: &[f64]) -> Result<Vec<f64>> {
        let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(self.apply(&xc)?.into_iter().map(|v| v.re).collect())
    }

    pub fn solve_real(&self, b: &[f64]) -> Result<Vec<f64>> {
        let bc: Vec<Complex64> = b.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(self.solve(&bc)?.into_iter().map(|v| v.re).collect())
    }

    /// |C| = F^* diag(|lambda|) F, Hermitian positive semidefinite.
    pub fn abs(&self) -> Self {
        Self::from_eigenvalues(self.eigenvalues.iter().map(|l| Complex64::new(l.norm(), 0.0)).collect())
            .expect("non-empty")
    }

    /// h(C) = F^* diag(h(lambda)) F.
    pub fn matfun(&self, h: &AnalyticFn) -> Result<Self> {
        if let Some(index) = self.eigenvalues.iter().position(|&l| h.has_pole_at(l)) {
            return Err(Error::Pole { index });
        }
        Self::from_eigenvalues(self.eigenvalues.iter().map(|&l| h.eval(l)).collect())
    }

    /// Operator with eigenvalues raised to `p`; for Hermitian PSD circulants.
    pub fn real_power(&self, p: f64) -> Result<Self> {
        let max = self.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
        if p < 0.0 {
            if let Some(index) = self.eigenvalues.iter().position(|l| l.norm() <= SINGULAR_FLOOR * max) {
                return Err(Error::Singular { index });
            }
        }
        Self::from_eigenvalues(self.eigenvalues.iter().map(|l| Complex64::new(l.re.powf(p), 0.0)).collect())
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let c = self.first_column();
        let n = c.len();
        DMatrix::from_fn(n, n, |i, j| c[(i + n - j) % n])
    }

    pub fn to_dense_real(&self) -> DMatrix<f64> {
        self.to_dense().map(|v| v.re)
    }
}

/// Optimal circulant in the Frobenius norm: c_k = ((n-k) a_k + k a_{k-n}) / n.
pub fn optimal_frobenius_circulant(t: &ToeplitzOperator) -> CirculantOperator {
    let n = t.dim();
    let col: Vec<Complex64> = (0..n)
        .map(|k| {
            let ki = k as i64;
            let tail = if k == 0 { Complex64::new(0.0, 0.0) } else { t.coeff(ki - n as i64) };
            (t.coeff(ki) * (n - k) as f64 + tail * k as f64) / n as f64
        })
        .collect();
    CirculantOperator::from_first_column(&col).expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_dense() {
        let col: Vec<Complex64> = [4.0, 1.0, 0.5, 1.0].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let c = CirculantOperator::from_first_column(&col).unwrap();
        let x = vec![1.0, -2.0, 3.0, 0.5];
        let y = c.apply_real(&x).unwrap();
        let d = c.to_dense_real();
        let yd = &d * nalgebra::DVector::from_vec(x.clone());
        for i in 0..4 {
            assert!((y[i] - yd[i]).abs() < 1e-13);
        }
        let back = c.solve_real(&y).unwrap();
        for i in 0..4 {
            assert!((back[i] - x[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn singular_circulant_reports_index() {
        let col = vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        let c = CirculantOperator::from_first_column(&col).unwrap();
        assert!(matches!(c.solve_real(&[1.0, 1.0]), Err(Error::Singular { index: 0 })));
    }

    #[test]
    fn log_pole_reported() {
        let c = CirculantOperator::from_eigenvalues(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]).unwrap();
        assert!(matches!(c.matfun(&AnalyticFn::Log1p), Err(Error::Pole { index: 1 })));
    }
}
