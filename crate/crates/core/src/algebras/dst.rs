use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::{Error, Result};

/// Cached plan for the orthonormal DST-I
/// S_ij = sqrt(2/(n+1)) sin(i j pi/(n+1)), computed from a length-2(n+1)
/// FFT of the odd extension.
#[derive(Clone)]
pub struct DstPlan {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for DstPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DstPlan").field("n", &self.n).finish()
    }
}

impl DstPlan {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("DST size must be positive".into()));
        }
        let fft = FftPlanner::new().plan_fft_forward(2 * (n + 1));
        Ok(Self { n, fft })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// In-place transform of one vector of length n.
    pub fn apply_inplace(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        let n = self.n;
        let m = 2 * (n + 1);
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for j in 0..n {
            buf[j + 1] = Complex64::new(x[j], 0.0);
            buf[m - 1 - j] = Complex64::new(-x[j], 0.0);
        }
        self.fft.process(&mut buf);
        let s = (2.0 / (n + 1) as f64).sqrt() * -0.5;
        for k in 0..n {
            x[k] = s * buf[k + 1].im;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        let mut y = x.to_vec();
        self.apply_inplace(&mut y);
        Ok(y)
    }
}

/// One-shot orthonormal DST-I.
pub fn dst1_apply(x: &[f64]) -> Result<Vec<f64>> {
    DstPlan::new(x.len())?.apply(x)
}

/// Dense DST-I matrix.
pub fn dst1_dense(n: usize) -> DMatrix<f64> {
    let s = (2.0 / (n + 1) as f64).sqrt();
    DMatrix::from_fn(n, n, |i, j| s * (((i + 1) * (j + 1)) as f64 * PI / (n + 1) as f64).sin())
}
