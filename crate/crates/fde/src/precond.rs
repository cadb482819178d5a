//! Preconditioners for the one- and two-dimensional step matrices.

use num_complex::Complex64;
use tauprec_core::algebras::{optimal_frobenius_circulant, CirculantOperator, DstPlan, Kron2DTau, TauOperator, TridiagonalOperator};
use tauprec_core::krylov::Preconditioner;
use tauprec_core::spectra::symmetric_eigs;
use tauprec_core::symbols::{sample_symbol, FourierSymbol, SymbolGrid};
use tauprec_core::toeplitz::ToeplitzOperator;
use tauprec_core::{Error, Result};

use crate::assemble::{Fde1dOperator, Fde2dOperator};

/// Preconditioner families for the one-dimensional step matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrecondKind1d {
    Identity,
    /// D_n |c(nu I + T_n(p_alpha))|.
    Circulant,
    /// D_n S diag(p_alpha(theta_j)) S.
    TauSymbol,
    /// S diag(nu + d_{+,j} g_alpha(theta_j) + d_{-,j} g_alpha(-theta_j)) S.
    FullSymbol,
    /// S diag(d_{n,j} p_alpha(theta_j)) S.
    AltSymbol,
    /// Central three diagonals of the step matrix.
    Tridiagonal,
}

impl PrecondKind1d {
    pub const ALL: [PrecondKind1d; 6] = [
        PrecondKind1d::Identity,
        PrecondKind1d::Circulant,
        PrecondKind1d::TauSymbol,
        PrecondKind1d::FullSymbol,
        PrecondKind1d::AltSymbol,
        PrecondKind1d::Tridiagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrecondKind1d::Identity => "identity",
            PrecondKind1d::Circulant => "circulant",
            PrecondKind1d::TauSymbol => "tau",
            PrecondKind1d::FullSymbol => "full",
            PrecondKind1d::AltSymbol => "alt",
            PrecondKind1d::Tridiagonal => "tri",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Built one-dimensional preconditioner.
#[derive(Debug, Clone)]
pub enum Precond1d {
    Identity,
    Circulant { scale: Vec<f64>, c: CirculantOperator },
    Tau(TauOperator),
    Full { plan: DstPlan, diag: Vec<Complex64> },
    Tridiagonal(TridiagonalOperator),
}

fn p_alpha_on_tau_grid(alpha: f64, n: usize) -> Result<Vec<f64>> {
    Ok(sample_symbol(&FourierSymbol::p_alpha(alpha), SymbolGrid::Tau(n))?.iter().map(|z| z.re).collect())
}

impl Precond1d {
    pub fn build(kind: PrecondKind1d, m: &Fde1dOperator) -> Result<Self> {
        let n = m.d_plus.len();
        let alpha = m.alpha;
        Ok(match kind {
            PrecondKind1d::Identity => Precond1d::Identity,
            PrecondKind1d::TauSymbol => {
                Precond1d::Tau(TauOperator::with_scale(p_alpha_on_tau_grid(alpha, n)?, m.d_mean())?)
            }
            PrecondKind1d::AltSymbol => {
                let p = p_alpha_on_tau_grid(alpha, n)?;
                let d = m.d_mean();
                Precond1d::Tau(TauOperator::new(p.iter().zip(&d).map(|(a, b)| a * b).collect())?)
            }
            PrecondKind1d::FullSymbol => {
                let g = FourierSymbol::g_alpha(alpha);
                let theta = SymbolGrid::Tau(n).points();
                let diag = (0..n)
                    .map(|j| m.nu + m.d_plus[j] * g.eval(theta[j]) + m.d_minus[j] * g.eval(-theta[j]))
                    .collect();
                Precond1d::Full { plan: DstPlan::new(n)?, diag }
            }
            PrecondKind1d::Tridiagonal => Precond1d::Tridiagonal(m.tridiagonal()),
            PrecondKind1d::Circulant => {
                // Symmetric part nu I + T + T^T has symbol nu + p_alpha.
                let t = m.toeplitz();
                let sym = ToeplitzOperator::from_fn(n, |k| {
                    let id = if k == 0 { m.nu } else { 0.0 };
                    t.coeff(k) + t.coeff(-k) + Complex64::new(id, 0.0)
                })?;
                let c = optimal_frobenius_circulant(&sym).abs();
                Precond1d::Circulant { scale: m.d_mean(), c }
            }
        })
    }
}

impl Preconditioner for Precond1d {
    fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        match self {
            Precond1d::Identity => Ok(b.to_vec()),
            Precond1d::Tau(t) => t.solve(b),
            Precond1d::Tridiagonal(t) => t.solve(b),
            Precond1d::Circulant { scale, c } => {
                if let Some(index) = scale.iter().position(|&v| !(v > 0.0)) {
                    return Err(Error::Definiteness { index, value: scale[index] });
                }
                let y: Vec<f64> = b.iter().zip(scale).map(|(b, s)| b / s).collect();
                c.solve_real(&y)
            }
            Precond1d::Full { plan, diag } => {
                if let Some(index) = diag.iter().position(|z| z.norm() == 0.0) {
                    return Err(Error::Singular { index });
                }
                // S is real, so transform the real and imaginary parts separately.
                let sb = plan.apply(b)?;
                let q: Vec<Complex64> = sb.iter().zip(diag).map(|(v, d)| Complex64::new(*v, 0.0) / d).collect();
                let mut re: Vec<f64> = q.iter().map(|z| z.re).collect();
                plan.apply_inplace(&mut re);
                Ok(re)
            }
        }
    }
}

/// Preconditioner families for the two-dimensional step matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrecondKind2d {
    Identity,
    /// D_N (S (x) S) diag(q_alpha(theta_i) + (s/r) q_beta(theta_j)) (S (x) S).
    TauSymbol,
    /// (S (x) S) diag(1/r + d q_alpha(theta_i) + (s/r) e q_beta(theta_j)) (S (x) S)
    /// for constant coefficients d and e.
    Hatted { d: f64, e: f64 },
}

pub type Precond2d = Kron2DTau;

/// Builds a two-dimensional preconditioner; `None` means the identity.
pub fn build_precond_2d(kind: PrecondKind2d, m: &Fde2dOperator, alpha: f64, beta: f64) -> Result<Option<Precond2d>> {
    let (n1, n2) = (m.n1, m.n2);
    let qa: Vec<f64> = sample_symbol(&FourierSymbol::q_alpha(alpha), SymbolGrid::Tau(n1))?.iter().map(|z| z.re).collect();
    let qb: Vec<f64> = sample_symbol(&FourierSymbol::q_alpha(beta), SymbolGrid::Tau(n2))?.iter().map(|z| z.re).collect();
    let grid = |c0: f64, ca: f64, cb: f64| -> Vec<f64> {
        let mut f = Vec::with_capacity(n1 * n2);
        for j in 0..n2 {
            for i in 0..n1 {
                f.push(c0 + ca * qa[i] + cb * m.ratio * qb[j]);
            }
        }
        f
    };
    Ok(match kind {
        PrecondKind2d::Identity => None,
        PrecondKind2d::TauSymbol => Some(Kron2DTau::new(n1, n2, grid(0.0, 1.0, 1.0), Some(m.d_mean()))?),
        PrecondKind2d::Hatted { d, e } => Some(Kron2DTau::new(n1, n2, grid(m.shift, d, e), None)?),
    })
}

/// Eigenvalues of P^{-1} M for symmetric M and an unscaled SPD tau
/// preconditioner, from the similar matrix P^{-1/2} M P^{-1/2}; ascending.
pub fn symmetric_preconditioned_eigs(m: &Fde2dOperator, p: &Precond2d) -> Result<Vec<f64>> {
    let a = m.to_dense();
    let asym = (&a - a.transpose()).amax();
    if asym > 1e-12 * a.amax() {
        return Err(Error::InvalidArgument(format!("operator is not symmetric (defect {asym:.2e})")));
    }
    let h = p.inverse_sqrt_dense()?;
    let b = &h * a * &h;
    symmetric_eigs(&((&b + b.transpose()) * 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::example_1d;
    use tauprec_core::algebras::dst1_dense;

    #[test]
    fn full_symbol_solve_matches_dense_complex_inverse() {
        let p = example_1d(1.5, 9);
        let m = Fde1dOperator::assemble(&p, 1).unwrap();
        let pre = Precond1d::build(PrecondKind1d::FullSymbol, &m).unwrap();
        let Precond1d::Full { diag, .. } = &pre else { panic!() };
        let s = dst1_dense(9).map(|v| Complex64::new(v, 0.0));
        let dinv = nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(9, diag.iter().map(|z| 1.0 / z)));
        let pinv = &s * dinv * &s;
        let b: Vec<f64> = (0..9).map(|i| i as f64 - 3.0).collect();
        let want = &pinv * nalgebra::DVector::from_iterator(9, b.iter().map(|&v| Complex64::new(v, 0.0)));
        let got = pre.solve(&b).unwrap();
        for i in 0..9 {
            assert!((got[i] - want[i].re).abs() < 1e-12);
        }
    }

    #[test]
    fn every_kind_builds_and_solves() {
        let p = example_1d(1.8, 31);
        let m = Fde1dOperator::assemble(&p, 1).unwrap();
        let b = vec![1.0; 31];
        for k in PrecondKind1d::ALL {
            let x = Precond1d::build(k, &m).unwrap().solve(&b).unwrap();
            assert!(x.iter().all(|v| v.is_finite()), "{k:?}");
        }
    }
}
