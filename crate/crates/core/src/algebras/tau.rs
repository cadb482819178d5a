use nalgebra::DMatrix;

use super::dst::{dst1_dense, DstPlan};
use crate::{Error, Result};

fn check_positive(f: &[f64]) -> Result<()> {
    match f.iter().position(|&v| !(v > 0.0)) {
        Some(index) => Err(Error::Definiteness { index, value: f[index] }),
        None => Ok(()),
    }
}

/// Tau-algebra matrix S diag(f) S, optionally left-scaled by a positive
/// diagonal D so that P = D S diag(f) S.
#[derive(Debug, Clone)]
pub struct TauOperator {
    plan: DstPlan,
    diag: Vec<f64>,
    scale: Option<Vec<f64>>,
}

impl TauOperator {
    pub fn new(diag: Vec<f64>) -> Result<Self> {
        let plan = DstPlan::new(diag.len())?;
        Ok(Self { plan, diag, scale: None })
    }

    /// P = D S diag(f) S with D = diag(scale).
    pub fn with_scale(diag: Vec<f64>, scale: Vec<f64>) -> Result<Self> {
        if scale.len() != diag.len() {
            return Err(Error::DimensionMismatch { expected: diag.len(), got: scale.len() });
        }
        let plan = DstPlan::new(diag.len())?;
        Ok(Self { plan, diag, scale: Some(scale) })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = self.plan.apply(x)?;
        for (v, f) in y.iter_mut().zip(&self.diag) {
            *v *= f;
        }
        self.plan.apply_inplace(&mut y);
        if let Some(d) = &self.scale {
            for (v, s) in y.iter_mut().zip(d) {
                *v *= s;
            }
        }
        Ok(y)
    }

    /// Solves P x = b. Requires positive eigenvalues and a positive scaling.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        check_positive(&self.diag)?;
        let mut y = b.to_vec();
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: y.len() });
        }
        if let Some(d) = &self.scale {
            check_positive(d)?;
            for (v, s) in y.iter_mut().zip(d) {
                *v /= s;
            }
        }
        self.plan.apply_inplace(&mut y);
        for (v, f) in y.iter_mut().zip(&self.diag) {
            *v /= f;
        }
        self.plan.apply_inplace(&mut y);
        Ok(y)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let s = dst1_dense(self.dim());
        let f = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.diag.clone()));
        let core = &s * f * &s;
        match &self.scale {
            Some(d) => DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d.clone())) * core,
            None => core,
        }
    }
}

/// Two-dimensional tau matrix D (S_{n2} (x) S_{n1}) diag(f) (S_{n2} (x) S_{n1})
/// on vectors ordered with the first index varying fastest.
#[derive(Debug, Clone)]
pub struct Kron2DTau {
    n1: usize,
    n2: usize,
    p1: DstPlan,
    p2: DstPlan,
    diag: Vec<f64>,
    scale: Option<Vec<f64>>,
}

impl Kron2DTau {
    pub fn new(n1: usize, n2: usize, diag: Vec<f64>, scale: Option<Vec<f64>>) -> Result<Self> {
        let n = n1 * n2;
        if diag.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: diag.len() });
        }
        if let Some(d) = &scale {
            if d.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: d.len() });
            }
        }
        Ok(Self { n1, n2, p1: DstPlan::new(n1)?, p2: DstPlan::new(n2)?, diag, scale })
    }

    pub fn dim(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Applies S_{n2} (x) S_{n1} in place.
    pub fn transform(&self, x: &mut [f64]) {
        let (n1, n2) = (self.n1, self.n2);
        for col in x.chunks_mut(n1) {
            self.p1.apply_inplace(col);
        }
        let mut row = vec![0.0; n2];
        for i in 0..n1 {
            for j in 0..n2 {
                row[j] = x[i + n1 * j];
            }
            self.p2.apply_inplace(&mut row);
            for j in 0..n2 {
                x[i + n1 * j] = row[j];
            }
        }
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        let mut y = x.to_vec();
        self.transform(&mut y);
        for (v, f) in y.iter_mut().zip(&self.diag) {
            *v *= f;
        }
        self.transform(&mut y);
        if let Some(d) = &self.scale {
            for (v, s) in y.iter_mut().zip(d) {
                *v *= s;
            }
        }
        Ok(y)
    }

    /// Dense P^{-1/2} = (S (x) S) diag(f^{-1/2}) (S (x) S) for an unscaled,
    /// positive definite operator.
    pub fn inverse_sqrt_dense(&self) -> Result<DMatrix<f64>> {
        if self.scale.is_some() {
            return Err(Error::InvalidArgument("square root needs an unscaled tau operator".into()));
        }
        check_positive(&self.diag)?;
        let n = self.dim();
        let mut g = DMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            self.transform(&mut e);
            g.set_column(j, &nalgebra::DVector::from_column_slice(&e));
        }
        let d = nalgebra::DVector::from_iterator(n, self.diag.iter().map(|f| 1.0 / f.sqrt()));
        let gd = &g * DMatrix::from_diagonal(&d);
        Ok(&gd * g.transpose())
    }

    /// Solves P x = b: divide by D, transform, divide by f, transform back.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: b.len() });
        }
        check_positive(&self.diag)?;
        let mut y = b.to_vec();
        if let Some(d) = &self.scale {
            check_positive(d)?;
            for (v, s) in y.iter_mut().zip(d) {
                *v /= s;
            }
        }
        self.transform(&mut y);
        for (v, f) in y.iter_mut().zip(&self.diag) {
            *v /= f;
        }
        self.transform(&mut y);
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_solve_inverts_apply() {
        let t = TauOperator::with_scale(vec![1.0, 2.0, 3.0, 4.5], vec![0.5, 1.0, 2.0, 1.5]).unwrap();
        let x = vec![1.0, -1.0, 2.0, 0.25];
        let y = t.apply(&x).unwrap();
        let yd = t.to_dense() * nalgebra::DVector::from_vec(x.clone());
        let back = t.solve(&y).unwrap();
        for i in 0..4 {
            assert!((y[i] - yd[i]).abs() < 1e-12);
            assert!((back[i] - x[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn nonpositive_diagonal_rejected() {
        let t = TauOperator::new(vec![1.0, 0.0, 2.0]).unwrap();
        assert!(matches!(t.solve(&[1.0, 1.0, 1.0]), Err(Error::Definiteness { index: 1, .. })));
    }

    #[test]
    fn kron_matches_dense() {
        let (n1, n2) = (3, 4);
        let f: Vec<f64> = (0..12).map(|i| 1.0 + i as f64 * 0.25).collect();
        let k = Kron2DTau::new(n1, n2, f.clone(), None).unwrap();
        let s = dst1_dense(n2).kronecker(&dst1_dense(n1));
        let dense = &s * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(f)) * &s;
        let x: Vec<f64> = (0..12).map(|i| (i as f64).sin()).collect();
        let y = k.apply(&x).unwrap();
        let yd = dense * nalgebra::DVector::from_vec(x.clone());
        for i in 0..12 {
            assert!((y[i] - yd[i]).abs() < 1e-12);
        }
        let back = k.solve(&y).unwrap();
        for i in 0..12 {
            assert!((back[i] - x[i]).abs() < 1e-12);
        }
    }
}
