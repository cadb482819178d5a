use nalgebra::DMatrix;

use crate::{Error, Result};

/// Tridiagonal matrix with sub-, main and super-diagonals, solved by the
/// Thomas algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    /// lower[i] = A[i+1, i]
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    /// upper[i] = A[i, i+1]
    pub upper: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(lower: Vec<f64>, diag: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty tridiagonal matrix".into()));
        }
        for band in [&lower, &upper] {
            if band.len() != n - 1 {
                return Err(Error::DimensionMismatch { expected: n - 1, got: band.len() });
            }
        }
        Ok(Self { lower, diag, upper })
    }

    /// Keeps the three central diagonals of a dense matrix.
    pub fn from_dense(a: &DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
        }
        let n = a.nrows();
        Self::new(
            (0..n.saturating_sub(1)).map(|i| a[(i + 1, i)]).collect(),
            (0..n).map(|i| a[(i, i)]).collect(),
            (0..n.saturating_sub(1)).map(|i| a[(i, i + 1)]).collect(),
        )
    }

    /// Recovers the bands of a tridiagonal linear map from three matvecs with
    /// the strided probes sum_{j = r mod 3} e_j. Entries outside the band
    /// would alias into the result, so the map must itself be tridiagonal.
    pub fn from_probe(n: usize, apply: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("empty tridiagonal matrix".into()));
        }
        let mut lower = vec![0.0; n - 1];
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n - 1];
        for r in 0..3.min(n) {
            let probe: Vec<f64> = (0..n).map(|j| if j % 3 == r { 1.0 } else { 0.0 }).collect();
            let y = apply(&probe);
            for (i, &yi) in y.iter().enumerate() {
                if i % 3 == r {
                    diag[i] = yi;
                } else if (i + 1) % 3 == r && i + 1 < n {
                    upper[i] = yi;
                } else if i > 0 && (i - 1) % 3 == r {
                    lower[i - 1] = yi;
                }
            }
        }
        Self::new(lower, diag, upper)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        Ok((0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.lower[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.upper[i] * x[i + 1];
                }
                s
            })
            .collect())
    }

    /// Thomas algorithm without pivoting.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: b.len() });
        }
        let scale = self.diag.iter().map(|v| v.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut piv = self.diag[0];
        if piv.abs() <= 1e-14 * scale {
            return Err(Error::ZeroPivot { index: 0 });
        }
        if n > 1 {
            c[0] = self.upper[0] / piv;
        }
        d[0] = b[0] / piv;
        for i in 1..n {
            piv = self.diag[i] - self.lower[i - 1] * c[i - 1];
            if piv.abs() <= 1e-14 * scale {
                return Err(Error::ZeroPivot { index: i });
            }
            if i + 1 < n {
                c[i] = self.upper[i] / piv;
            }
            d[i] = (b[i] - self.lower[i - 1] * d[i - 1]) / piv;
        }
        for i in (0..n - 1).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thomas_matches_dense() {
        let t = TridiagonalOperator::new(vec![-1.0, -0.5, 2.0], vec![4.0, 5.0, 6.0, 3.0], vec![1.0, -2.0, 0.5]).unwrap();
        let x = vec![1.0, 2.0, -1.0, 0.5];
        let b = t.apply(&x).unwrap();
        let s = t.solve(&b).unwrap();
        for i in 0..4 {
            assert!((s[i] - x[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_pivot_detected() {
        let t = TridiagonalOperator::new(vec![1.0], vec![1.0, 1.0], vec![1.0]).unwrap();
        assert!(matches!(t.solve(&[1.0, 1.0]), Err(Error::ZeroPivot { index: 1 })));
    }

    #[test]
    fn probe_recovers_bands() {
        let t = TridiagonalOperator::new(vec![-1.0, -0.5, 2.0, 7.0], vec![4.0, 5.0, 6.0, 3.0, 1.0], vec![1.0, -2.0, 0.5, 9.0]).unwrap();
        let p = TridiagonalOperator::from_probe(5, |x| t.apply(x).unwrap()).unwrap();
        assert_eq!(p, t);
    }
}
