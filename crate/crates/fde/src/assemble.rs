//! Coefficient matrices of one time step, applied matrix-free.

use nalgebra::DMatrix;
use tauprec_core::algebras::TridiagonalOperator;
use tauprec_core::grunwald::{grunwald_coeffs, weighted_grunwald_coeffs};
use tauprec_core::krylov::LinearMap;
use tauprec_core::toeplitz::ToeplitzOperator;
use tauprec_core::{Error, Result};

use crate::problem::{DiffusionProblem1d, DiffusionProblem2d};

/// Toeplitz matrix with entries -c_{i-j+1} for i - j >= -1 and zero above the
/// first superdiagonal, built from coefficients c_0..c_n.
pub fn shifted_toeplitz(c: &[f64], n: usize) -> Result<ToeplitzOperator> {
    if c.len() < n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, got: c.len() });
    }
    let coeffs: Vec<f64> = (-(n as i64 - 1)..n as i64)
        .map(|k| if k >= -1 { -c[(k + 1) as usize] } else { 0.0 })
        .collect();
    ToeplitzOperator::from_real(&coeffs)
}

/// T_{alpha,n} from the plain Grünwald coefficients.
pub fn grunwald_matrix(alpha: f64, n: usize) -> Result<ToeplitzOperator> {
    shifted_toeplitz(&grunwald_coeffs(alpha, n)?, n)
}

/// S_{alpha,n} from the weighted coefficients.
pub fn weighted_grunwald_matrix(alpha: f64, n: usize) -> Result<ToeplitzOperator> {
    shifted_toeplitz(&weighted_grunwald_coeffs(alpha, n)?, n)
}

fn sample_nonneg(name: &str, v: Vec<f64>) -> Result<Vec<f64>> {
    match v.iter().position(|&x| !(x >= 0.0) || !x.is_finite()) {
        Some(index) => Err(Error::InvalidArgument(format!("{name} is negative or non-finite at node {index}: {}", v[index]))),
        None => Ok(v),
    }
}

/// M = nu I + D_+ T + D_- T^T for one implicit Euler step.
#[derive(Debug, Clone)]
pub struct Fde1dOperator {
    pub alpha: f64,
    pub nu: f64,
    pub d_plus: Vec<f64>,
    pub d_minus: Vec<f64>,
    /// First three Grünwald coefficients g_0, g_1, g_2.
    g_head: [f64; 3],
    t: ToeplitzOperator,
    tt: ToeplitzOperator,
}

impl Fde1dOperator {
    /// Coefficient matrix at time level m (t_m = m dt).
    pub fn assemble(p: &DiffusionProblem1d, m: usize) -> Result<Self> {
        p.validate()?;
        let t_m = m as f64 * p.dt();
        let x = p.nodes();
        let d_plus = sample_nonneg("d_+", x.iter().map(|&x| (p.d_plus)(x, t_m)).collect())?;
        let d_minus = sample_nonneg("d_-", x.iter().map(|&x| (p.d_minus)(x, t_m)).collect())?;
        Self::from_parts(p.alpha, p.nu(), d_plus, d_minus)
    }

    pub fn from_parts(alpha: f64, nu: f64, d_plus: Vec<f64>, d_minus: Vec<f64>) -> Result<Self> {
        let n = d_plus.len();
        if d_minus.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: d_minus.len() });
        }
        let g = grunwald_coeffs(alpha, n.max(2))?;
        let t = shifted_toeplitz(&g, n)?;
        let tt = t.transpose();
        Ok(Self { alpha, nu, d_plus, d_minus, g_head: [g[0], g[1], g[2]], t, tt })
    }

    pub fn toeplitz(&self) -> &ToeplitzOperator {
        &self.t
    }

    /// D_n = (D_+ + D_-)/2.
    pub fn d_mean(&self) -> Vec<f64> {
        self.d_plus.iter().zip(&self.d_minus).map(|(a, b)| 0.5 * (a + b)).collect()
    }

    /// The three central diagonals of M, read off the Toeplitz structure.
    pub fn tridiagonal(&self) -> TridiagonalOperator {
        let n = self.d_plus.len();
        let [g0, g1, g2] = self.g_head;
        let diag = (0..n).map(|i| self.nu - g1 * (self.d_plus[i] + self.d_minus[i])).collect();
        let upper = (0..n - 1).map(|i| -g0 * self.d_plus[i] - g2 * self.d_minus[i]).collect();
        let lower = (1..n).map(|i| -g2 * self.d_plus[i] - g0 * self.d_minus[i]).collect();
        TridiagonalOperator::new(lower, diag, upper).expect("consistent bands")
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.d_plus.len();
        let t = self.t.to_dense_real();
        DMatrix::from_fn(n, n, |i, j| {
            let id = if i == j { self.nu } else { 0.0 };
            id + self.d_plus[i] * t[(i, j)] + self.d_minus[i] * t[(j, i)]
        })
    }
}

impl LinearMap for Fde1dOperator {
    fn dim(&self) -> usize {
        self.d_plus.len()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let a = self.t.apply_real(x).expect("dimension checked by caller");
        let b = self.tt.apply_real(x).expect("dimension checked by caller");
        (0..x.len())
            .map(|i| self.nu * x[i] + self.d_plus[i] * a[i] + self.d_minus[i] * b[i])
            .collect()
    }
}

/// Right-hand side nu u_prev + h^alpha f(x, t_m).
pub fn rhs_1d(p: &DiffusionProblem1d, m: usize, u_prev: &[f64]) -> Vec<f64> {
    let t_m = m as f64 * p.dt();
    let ha = p.h().powf(p.alpha);
    let nu = p.nu();
    p.nodes().iter().zip(u_prev).map(|(&x, &u)| nu * u + ha * (p.source)(x, t_m)).collect()
}

/// Separable one-directional Toeplitz action on x-fastest vectors.
fn apply_x(t: &ToeplitzOperator, n1: usize, x: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    for col in x.chunks(n1) {
        out.extend(t.apply_real(col).expect("block size"));
    }
    out
}

fn apply_y(t: &ToeplitzOperator, n1: usize, n2: usize, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    let mut line = vec![0.0; n2];
    for i in 0..n1 {
        for j in 0..n2 {
            line[j] = x[i + n1 * j];
        }
        let y = t.apply_real(&line).expect("block size");
        for j in 0..n2 {
            out[i + n1 * j] = y[j];
        }
    }
    out
}

/// Spatial part A_x + (s/r) A_y of the scaled Crank-Nicolson scheme, with
/// A_x = D_+ (I (x) S_alpha) + D_- (I (x) S_alpha^T) and
/// A_y = E_+ (S_beta (x) I) + E_- (S_beta^T (x) I), plus `shift` times I.
#[derive(Debug, Clone)]
pub struct Fde2dOperator {
    pub n1: usize,
    pub n2: usize,
    pub shift: f64,
    pub ratio: f64,
    pub d_plus: Vec<f64>,
    pub d_minus: Vec<f64>,
    pub e_plus: Vec<f64>,
    pub e_minus: Vec<f64>,
    sa: ToeplitzOperator,
    sat: ToeplitzOperator,
    sb: ToeplitzOperator,
    sbt: ToeplitzOperator,
}

impl Fde2dOperator {
    /// Coefficient fields sampled at time t, with the given identity shift.
    pub fn assemble(p: &DiffusionProblem2d, t: f64, shift: f64) -> Result<Self> {
        p.validate()?;
        let nodes = p.nodes();
        let sample = |name: &str, f: &crate::problem::Field2| {
            sample_nonneg(name, nodes.iter().map(|&(x, y)| f(x, y, t)).collect())
        };
        let sa = weighted_grunwald_matrix(p.alpha, p.n1)?;
        let sb = weighted_grunwald_matrix(p.beta, p.n2)?;
        Ok(Self {
            n1: p.n1,
            n2: p.n2,
            shift,
            ratio: p.s() / p.r(),
            d_plus: sample("d_+", &p.d_plus)?,
            d_minus: sample("d_-", &p.d_minus)?,
            e_plus: sample("e_+", &p.e_plus)?,
            e_minus: sample("e_-", &p.e_minus)?,
            sat: sa.transpose(),
            sbt: sb.transpose(),
            sa,
            sb,
        })
    }

    /// Time-step matrix (1/r) I + A_x + (s/r) A_y at time t.
    pub fn step_matrix(p: &DiffusionProblem2d, t: f64) -> Result<Self> {
        Self::assemble(p, t, 1.0 / p.r())
    }

    pub fn with_shift(&self, shift: f64) -> Self {
        Self { shift, ..self.clone() }
    }

    /// D_N = (D_+ + D_- + E_+ + E_-)/4.
    pub fn d_mean(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|k| 0.25 * (self.d_plus[k] + self.d_minus[k] + self.e_plus[k] + self.e_minus[k]))
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let c = self.apply(&e);
            m.set_column(j, &nalgebra::DVector::from_vec(c));
            e[j] = 0.0;
        }
        m
    }
}

impl LinearMap for Fde2dOperator {
    fn dim(&self) -> usize {
        self.n1 * self.n2
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let (n1, n2) = (self.n1, self.n2);
        let ax = apply_x(&self.sa, n1, x);
        let axt = apply_x(&self.sat, n1, x);
        let ay = apply_y(&self.sb, n1, n2, x);
        let ayt = apply_y(&self.sbt, n1, n2, x);
        (0..x.len())
            .map(|k| {
                self.shift * x[k]
                    + self.d_plus[k] * ax[k]
                    + self.d_minus[k] * axt[k]
                    + self.ratio * (self.e_plus[k] * ay[k] + self.e_minus[k] * ayt[k])
            })
            .collect()
    }
}

/// Crank-Nicolson right-hand side
/// ((1/r) I - A^{(m-1)}) u + 2 hx^alpha f(x, y, t_{m-1/2}).
pub fn rhs_2d(p: &DiffusionProblem2d, m: usize, u_prev: &[f64]) -> Result<Vec<f64>> {
    let dt = p.dt();
    let prev = Fde2dOperator::assemble(p, (m - 1) as f64 * dt, 0.0)?;
    let au = prev.apply(u_prev);
    let th = (m as f64 - 0.5) * dt;
    let c = 2.0 * p.hx().powf(p.alpha);
    let inv_r = 1.0 / p.r();
    Ok(p.nodes()
        .iter()
        .enumerate()
        .map(|(k, &(x, y))| inv_r * u_prev[k] - au[k] + c * (p.source)(x, y, th))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::example_1d;

    #[test]
    fn grunwald_matrix_layout() {
        let t = grunwald_matrix(1.5, 4).unwrap().to_dense_real();
        let g = grunwald_coeffs(1.5, 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let k = i as i64 - j as i64;
                let want = if k >= -1 { -g[(k + 1) as usize] } else { 0.0 };
                assert_eq!(t[(i, j)], want);
            }
        }
    }

    #[test]
    fn tridiagonal_matches_dense_bands() {
        let p = example_1d(1.5, 15);
        let m = Fde1dOperator::assemble(&p, 1).unwrap();
        let tri = TridiagonalOperator::from_dense(&m.to_dense()).unwrap();
        let ours = m.tridiagonal();
        for (a, b) in tri.diag.iter().zip(&ours.diag) {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in tri.upper.iter().zip(&ours.upper) {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in tri.lower.iter().zip(&ours.lower) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn matvec_matches_dense_1d() {
        let p = example_1d(1.2, 20);
        let m = Fde1dOperator::assemble(&p, 3).unwrap();
        let x: Vec<f64> = (0..20).map(|i| (i as f64 * 0.7).sin()).collect();
        let y = m.apply(&x);
        let yd = m.to_dense() * nalgebra::DVector::from_vec(x);
        for i in 0..20 {
            assert!((y[i] - yd[i]).abs() < 1e-11);
        }
    }

    #[test]
    fn split_into_symmetric_and_skew_parts() {
        // D_+ T + D_- T^T = D_n (T + T^T) + ((D_+ - D_-)/2)(T - T^T)
        let p = example_1d(1.7, 12);
        let m = Fde1dOperator::assemble(&p, 1).unwrap();
        let t = m.toeplitz().to_dense_real();
        let n = 12;
        let dn = m.d_mean();
        let lhs = m.to_dense() - DMatrix::<f64>::identity(n, n) * m.nu;
        let rhs = DMatrix::from_fn(n, n, |i, j| {
            dn[i] * (t[(i, j)] + t[(j, i)]) + 0.5 * (m.d_plus[i] - m.d_minus[i]) * (t[(i, j)] - t[(j, i)])
        });
        assert!((lhs - rhs).abs().max() < 1e-12);
    }
}
