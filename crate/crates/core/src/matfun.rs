//! Analytic functions and dense matrix functions h(A) by truncated Taylor series.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

/// Analytic functions with known Maclaurin series.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFn {
    /// Polynomial with coefficients c_0, c_1, ...
    Poly(Vec<f64>),
    Exp,
    Sin,
    /// log(1 + z), radius of convergence 1.
    Log1p,
}

impl AnalyticFn {
    pub fn name(&self) -> String {
        match self {
            AnalyticFn::Poly(c) => format!("poly{c:?}"),
            AnalyticFn::Exp => "exp".into(),
            AnalyticFn::Sin => "sin".into(),
            AnalyticFn::Log1p => "log1p".into(),
        }
    }

    /// Radius of convergence of the Maclaurin series.
    pub fn radius(&self) -> f64 {
        match self {
            AnalyticFn::Log1p => 1.0,
            _ => f64::INFINITY,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            AnalyticFn::Poly(c) => c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a),
            AnalyticFn::Exp => z.exp(),
            AnalyticFn::Sin => z.sin(),
            AnalyticFn::Log1p => (Complex64::new(1.0, 0.0) + z).ln(),
        }
    }

    /// True when `z` is at (or numerically on) a singularity.
    pub fn has_pole_at(&self, z: Complex64) -> bool {
        matches!(self, AnalyticFn::Log1p) && (Complex64::new(1.0, 0.0) + z).norm() < 1e-14
    }

    /// k-th Maclaurin coefficient.
    pub fn taylor_coeff(&self, k: usize) -> f64 {
        match self {
            AnalyticFn::Poly(c) => c.get(k).copied().unwrap_or(0.0),
            AnalyticFn::Exp => 1.0 / factorial(k),
            AnalyticFn::Sin => {
                if k % 2 == 0 {
                    0.0
                } else if (k / 2) % 2 == 0 {
                    1.0 / factorial(k)
                } else {
                    -1.0 / factorial(k)
                }
            }
            AnalyticFn::Log1p => {
                if k == 0 {
                    0.0
                } else if k % 2 == 1 {
                    1.0 / k as f64
                } else {
                    -1.0 / k as f64
                }
            }
        }
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Spectral norm estimate by power iteration on A^T A.
pub fn spectral_norm_estimate(a: &DMatrix<f64>) -> f64 {
    let n = a.ncols();
    if n == 0 {
        return 0.0;
    }
    let mut v = nalgebra::DVector::from_fn(n, |i, _| 1.0 + 0.01 * i as f64);
    v /= v.norm();
    let mut est = 0.0;
    for _ in 0..60 {
        let w = a.tr_mul(&(a * &v));
        let nw = w.norm();
        if nw == 0.0 {
            return (a * &v).norm().max(a.abs().max());
        }
        est = nw.sqrt();
        v = w / nw;
    }
    est
}

/// Dense h(A) for a real square matrix.
///
/// Polynomials are evaluated exactly by Horner's rule, the exponential by
/// scaling and squaring, and other functions by a Taylor series whose length
/// is set from the ratio of the norm estimate to the convergence radius.
pub fn matrix_function_dense(h: &AnalyticFn, a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    let n = a.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    if let AnalyticFn::Poly(c) = h {
        let mut acc = DMatrix::<f64>::zeros(n, n);
        for &ck in c.iter().rev() {
            acc = &acc * a + &id * ck;
        }
        return Ok(acc);
    }
    let norm = spectral_norm_estimate(a);
    let radius = h.radius();
    if norm >= radius {
        return Err(Error::Convergence { norm, radius });
    }
    if let AnalyticFn::Exp = h {
        let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let scaled = a / 2f64.powi(s);
        let mut result = taylor_sum(h, &scaled, 40);
        for _ in 0..s {
            result = &result * &result;
        }
        return Ok(result);
    }
    let cap = if radius.is_finite() {
        let q = norm / radius;
        let by_ratio = (10.0 * radius / (radius - norm)).ceil() as usize;
        let by_decay = if q > 0.0 { ((1e-16f64).ln() / q.ln()).ceil() as usize } else { 1 };
        by_ratio.max(by_decay) + 1
    } else {
        (norm.ceil() as usize) * 3 + 40
    };
    Ok(taylor_sum(h, a, cap.min(20_000)))
}

fn taylor_sum(h: &AnalyticFn, a: &DMatrix<f64>, max_terms: usize) -> DMatrix<f64> {
    let n = a.nrows();
    let mut power = DMatrix::<f64>::identity(n, n);
    let mut result = power.clone() * h.taylor_coeff(0);
    for k in 1..=max_terms {
        power = &power * a;
        let pn = power.norm();
        if pn == 0.0 {
            break;
        }
        let c = h.taylor_coeff(k);
        if c != 0.0 {
            result += &power * c;
        }
        let scale = c.abs().max(h.taylor_coeff(k + 1).abs());
        if k > 2 && pn * scale < 1e-17 * (1.0 + result.norm()) {
            break;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_diagonal() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.0, 1.0]));
        let e = matrix_function_dense(&AnalyticFn::Exp, &a).unwrap();
        assert!((e[(0, 0)] - 1.0).abs() < 1e-14);
        assert!((e[(1, 1)] - std::f64::consts::E).abs() < 1e-14);
        assert!(e[(0, 1)].abs() < 1e-15);
    }

    #[test]
    fn log1p_outside_radius_is_rejected() {
        let a = DMatrix::from_element(1, 1, 1.5);
        assert!(matches!(
            matrix_function_dense(&AnalyticFn::Log1p, &a),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn log1p_inverts_exp_minus_one() {
        let a = DMatrix::from_row_slice(2, 2, &[0.2, 0.1, -0.05, 0.3]);
        let l = matrix_function_dense(&AnalyticFn::Log1p, &a).unwrap();
        let e = matrix_function_dense(&AnalyticFn::Exp, &l).unwrap();
        let back = e - DMatrix::identity(2, 2);
        assert!((back - a).norm() < 1e-13);
    }

    #[test]
    fn polynomial_is_exact() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let p = matrix_function_dense(&AnalyticFn::Poly(vec![1.0, 1.0, 1.0]), &a).unwrap();
        let want = DMatrix::identity(2, 2) + &a + &a * &a;
        assert!((p - want).norm() < 1e-13);
    }

    #[test]
    fn non_square_rejected() {
        let a = DMatrix::<f64>::zeros(2, 3);
        assert!(matches!(matrix_function_dense(&AnalyticFn::Exp, &a), Err(Error::NotSquare { .. })));
    }
}
