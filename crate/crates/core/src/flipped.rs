//! Flipped (symmetrized) matrix functions Y_n h(T_n(f)) and their circulant
//! preconditioners, with the named test problems used in the spectral
//! experiments.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebras::{optimal_frobenius_circulant, CirculantOperator};
use crate::matfun::{matrix_function_dense, AnalyticFn};
use crate::symbols::FourierSymbol;
use crate::toeplitz::{fourier_coeffs_fft, ToeplitzOperator};
use crate::{Error, Result};

/// Jump-diffusion parameters of the finance example.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinanceParams {
    /// Jump arrival intensity.
    pub lambda: f64,
    /// Mean of the log jump size.
    pub mu: f64,
    /// Volatility of the asset.
    pub nu: f64,
    /// Standard deviation of the log jump size.
    pub sigma: f64,
    pub r: f64,
    pub dx: f64,
}

impl Default for FinanceParams {
    fn default() -> Self {
        Self { lambda: 0.1, mu: -0.9, nu: 0.25, sigma: 0.45, r: 0.05, dx: 4.0 / 101.0 }
    }
}

impl FinanceParams {
    fn density(&self, s: f64) -> f64 {
        (-(s - self.mu).powi(2) / (2.0 * self.sigma * self.sigma)).exp() / ((2.0 * PI).sqrt() * self.sigma)
    }

    /// Fourier coefficient a_j of the discretized integro-differential operator.
    pub fn coeff(&self, j: i64) -> f64 {
        let FinanceParams { lambda, mu, nu, sigma, r, dx } = *self;
        let kappa = (mu + sigma * sigma / 2.0).exp() - 1.0;
        let drift = dx * (2.0 * r - 2.0 * lambda * kappa - nu * nu) / 4.0;
        let jump = |j: i64| lambda * self.density(-(j as f64) * dx) * dx.powi(3);
        match j {
            0 => -nu * nu - dx * dx * (r + lambda - lambda * self.density(0.0) * dx),
            1 => nu * nu / 2.0 - drift + jump(1),
            -1 => nu * nu / 2.0 + drift + jump(-1),
            _ => jump(j),
        }
    }
}

/// Named (h, f) pairs of the spectral experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralExample {
    /// h = sin, f = e^{i theta}.
    SinExp,
    /// h = log(1+z), f = 0.5 e^{i theta}.
    LogHalf,
    /// h = 1 + z + z^2, f = -e^{i theta} + 1 + e^{-i theta} + e^{-2i theta} + e^{-3i theta}.
    Polynomial,
    /// h = exp, f the jump-diffusion symbol of degree n-1.
    Finance(FinanceParams),
}

impl SpectralExample {
    pub const NAMES: [&'static str; 4] = ["sin-exp", "log-half", "polynomial", "finance"];

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "1" | "sin-exp" => Some(Self::SinExp),
            "2" | "log-half" => Some(Self::LogHalf),
            "3" | "polynomial" => Some(Self::Polynomial),
            "4" | "finance" => Some(Self::Finance(FinanceParams::default())),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SinExp => Self::NAMES[0],
            Self::LogHalf => Self::NAMES[1],
            Self::Polynomial => Self::NAMES[2],
            Self::Finance(_) => Self::NAMES[3],
        }
    }

    pub fn h(&self) -> AnalyticFn {
        match self {
            Self::SinExp => AnalyticFn::Sin,
            Self::LogHalf => AnalyticFn::Log1p,
            Self::Polynomial => AnalyticFn::Poly(vec![1.0, 1.0, 1.0]),
            Self::Finance(_) => AnalyticFn::Exp,
        }
    }

    fn terms(&self, n: usize) -> Vec<(i64, f64)> {
        match self {
            Self::SinExp => vec![(1, 1.0)],
            Self::LogHalf => vec![(1, 0.5)],
            Self::Polynomial => vec![(1, -1.0), (0, 1.0), (-1, 1.0), (-2, 1.0), (-3, 1.0)],
            Self::Finance(p) => {
                let m = n as i64 - 1;
                (-m..=m).map(|j| (j, p.coeff(j))).collect()
            }
        }
    }

    /// The symbol f; the finance symbol depends on the matrix size.
    pub fn symbol(&self, n: usize) -> FourierSymbol {
        let terms = self.terms(n).into_iter().map(|(k, a)| (k, Complex64::new(a, 0.0))).collect();
        FourierSymbol::trig_poly(format!("f_{}", self.name()), terms)
    }

    /// T_n(f).
    pub fn toeplitz(&self, n: usize) -> Result<ToeplitzOperator> {
        let terms = self.terms(n);
        ToeplitzOperator::from_fn(n, |k| {
            let a = terms.iter().filter(|t| t.0 == k).map(|t| t.1).sum::<f64>();
            Complex64::new(a, 0.0)
        })
    }
}

/// Dense Y_n h(T_n(f)), symmetric for real Toeplitz T.
pub fn flipped_matrix_function(h: &AnalyticFn, t: &ToeplitzOperator) -> Result<DMatrix<f64>> {
    if !t.is_real() {
        return Err(Error::InvalidArgument("flip symmetrization needs real coefficients".into()));
    }
    let ht = matrix_function_dense(h, &t.to_dense_real())?;
    let n = ht.nrows();
    Ok(DMatrix::from_fn(n, n, |i, j| ht[(n - 1 - i, j)]))
}

/// Circulant preconditioners for Y_n h(T_n(f)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipPrecondKind {
    /// |c(T_n(h∘f))| with FFT-approximated coefficients of h∘f.
    ComposedCirculant,
    /// |h(c(T_n(f)))|.
    CirculantFunction,
}

impl FlipPrecondKind {
    pub const ALL: [FlipPrecondKind; 2] = [Self::ComposedCirculant, Self::CirculantFunction];

    pub fn name(&self) -> &'static str {
        match self {
            Self::ComposedCirculant => "abs-circ-composed",
            Self::CirculantFunction => "abs-h-circ",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Builds the absolute-value circulant preconditioner of the given kind.
pub fn flip_preconditioner(
    kind: FlipPrecondKind,
    h: &AnalyticFn,
    f: &FourierSymbol,
    n: usize,
) -> Result<CirculantOperator> {
    match kind {
        FlipPrecondKind::ComposedCirculant => {
            let hf = FourierSymbol::compose(h.clone(), f);
            let coeffs = fourier_coeffs_fft(|t| hf.eval(t), n)?;
            let real: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c.re, 0.0)).collect();
            Ok(optimal_frobenius_circulant(&ToeplitzOperator::new(real)?).abs())
        }
        FlipPrecondKind::CirculantFunction => {
            let coeffs = fourier_coeffs_fft(|t| f.eval(t), n)?;
            let c = optimal_frobenius_circulant(&ToeplitzOperator::new(coeffs)?);
            Ok(c.matfun(h)?.abs())
        }
    }
}

/// Eigenvalues of P^{-1} A for symmetric A and an SPD circulant P, computed
/// from the similar symmetric matrix P^{-1/2} A P^{-1/2}; ascending.
pub fn preconditioned_symmetric_eigs(a: &DMatrix<f64>, p: &CirculantOperator) -> Result<Vec<f64>> {
    let n = a.nrows();
    if p.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.dim() });
    }
    let half = p.real_power(-0.5)?.to_dense_real();
    let b = &half * a * &half;
    let sym = (&b + b.transpose()) * 0.5;
    crate::spectra::symmetric_eigs(&sym)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_matrix_function_matches_direct() {
        let t = SpectralExample::Polynomial.toeplitz(30).unwrap();
        let a = t.to_dense_real();
        let direct = &a * &a + &a + DMatrix::identity(30, 30);
        let y = flipped_matrix_function(&AnalyticFn::Poly(vec![1.0, 1.0, 1.0]), &t).unwrap();
        for i in 0..30 {
            for j in 0..30 {
                assert!((y[(i, j)] - direct[(29 - i, j)]).abs() < 1e-12);
            }
        }
        assert!((&y - y.transpose()).amax() < 1e-12);
    }

    #[test]
    fn finance_coefficients_are_real_and_decay() {
        let p = FinanceParams::default();
        assert!(p.coeff(0) < 0.0);
        assert!(p.coeff(1) > 0.0 && p.coeff(-1) > 0.0);
        let peak = (2..60).max_by(|&a, &b| p.coeff(a).total_cmp(&p.coeff(b))).unwrap();
        assert_eq!(peak, (-p.mu / p.dx).round() as i64);
        assert!(p.coeff(200).abs() < 1e-10 && p.coeff(-60).abs() < 1e-10);
    }

    #[test]
    fn preconditioners_are_spd() {
        let ex = SpectralExample::Polynomial;
        for kind in FlipPrecondKind::ALL {
            let p = flip_preconditioner(kind, &ex.h(), &ex.symbol(16), 16).unwrap();
            assert!(p.eigenvalues().iter().all(|l| l.re > 0.0 && l.im.abs() < 1e-12));
        }
    }
}
