//! Matrix-free preconditioned GMRES and MINRES.

use std::time::{Duration, Instant};

use crate::{Error, Result};

/// Square linear map applied by matvec only.
pub trait LinearMap {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64]) -> Vec<f64>;
}

/// Left preconditioner P, applied through P^{-1}.
pub trait Preconditioner {
    fn solve(&self, b: &[f64]) -> Result<Vec<f64>>;
}

/// P = I.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityPreconditioner;

impl Preconditioner for IdentityPreconditioner {
    fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        Ok(b.to_vec())
    }
}

impl Preconditioner for crate::algebras::TauOperator {
    fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        crate::algebras::TauOperator::solve(self, b)
    }
}

impl Preconditioner for crate::algebras::Kron2DTau {
    fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        crate::algebras::Kron2DTau::solve(self, b)
    }
}

impl Preconditioner for crate::algebras::TridiagonalOperator {
    fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        crate::algebras::TridiagonalOperator::solve(self, b)
    }
}

impl Preconditioner for crate::algebras::CirculantOperator {
    fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        self.solve_real(b)
    }
}

/// Wraps a closure as a linear map.
pub struct FnMap<F> {
    pub n: usize,
    pub f: F,
}

impl<F: Fn(&[f64]) -> Vec<f64>> LinearMap for FnMap<F> {
    fn dim(&self) -> usize {
        self.n
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        (self.f)(x)
    }
}

impl LinearMap for nalgebra::DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        (self * nalgebra::DVector::from_column_slice(x)).as_slice().to_vec()
    }
}

/// Stopping parameters.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Relative tolerance on the preconditioned residual.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { tol: 1e-7, max_iter: 1000 }
    }
}

/// Outcome of a Krylov solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Relative preconditioned residual after each iteration.
    pub history: Vec<f64>,
    /// ||b - Ax|| / ||b|| for the returned iterate.
    pub true_residual: f64,
    pub elapsed: Duration,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn check_finite(v: &[f64], what: &str) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what.into()))
    }
}

fn true_residual(a: &dyn LinearMap, b: &[f64], x: &[f64]) -> f64 {
    let ax = a.apply(x);
    let r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
    let nb = norm(b);
    if nb == 0.0 {
        norm(&r)
    } else {
        norm(&r) / nb
    }
}

/// Left-preconditioned GMRES without restarts (modified Gram-Schmidt Arnoldi,
/// Givens rotations). Stops when ||P^{-1}(b - Ax)|| <= tol ||P^{-1} b||.
pub fn gmres(
    a: &dyn LinearMap,
    b: &[f64],
    x0: Option<&[f64]>,
    p: &dyn Preconditioner,
    opts: SolveOptions,
) -> Result<SolveReport> {
    let start = Instant::now();
    let n = a.dim();
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }
    check_finite(b, "right-hand side")?;
    let mut x = match x0 {
        Some(v) if v.len() != n => return Err(Error::DimensionMismatch { expected: n, got: v.len() }),
        Some(v) => v.to_vec(),
        None => vec![0.0; n],
    };
    let pb = p.solve(b)?;
    let bnorm = norm(&pb);
    if bnorm == 0.0 {
        return Ok(SolveReport {
            x: vec![0.0; n],
            iterations: 0,
            converged: true,
            history: vec![],
            true_residual: 0.0,
            elapsed: start.elapsed(),
        });
    }
    let ax = a.apply(&x);
    let r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
    let r0 = p.solve(&r)?;
    let beta = norm(&r0);
    let target = opts.tol * bnorm;
    let mut history = vec![];
    if beta <= target {
        return Ok(SolveReport {
            true_residual: true_residual(a, b, &x),
            x,
            iterations: 0,
            converged: true,
            history,
            elapsed: start.elapsed(),
        });
    }
    let m = opts.max_iter.min(n).max(1);
    let mut basis: Vec<Vec<f64>> = vec![r0.iter().map(|v| v / beta).collect()];
    let mut h: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut cs: Vec<f64> = Vec::with_capacity(m);
    let mut sn: Vec<f64> = Vec::with_capacity(m);
    let mut g = vec![beta];
    let mut converged = false;
    let mut k = 0;
    while k < m {
        let mut w = p.solve(&a.apply(&basis[k]))?;
        let mut col = vec![0.0; k + 2];
        for (i, v) in basis.iter().enumerate() {
            let hij = dot(&w, v);
            col[i] = hij;
            for (wj, vj) in w.iter_mut().zip(v) {
                *wj -= hij * vj;
            }
        }
        let hnext = norm(&w);
        col[k + 1] = hnext;
        for i in 0..k {
            let t = cs[i] * col[i] + sn[i] * col[i + 1];
            col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
            col[i] = t;
        }
        let rho = col[k].hypot(col[k + 1]);
        if !rho.is_finite() {
            return Err(Error::Breakdown { iteration: k + 1 });
        }
        let (c, s) = if rho == 0.0 { (1.0, 0.0) } else { (col[k] / rho, col[k + 1] / rho) };
        col[k] = rho;
        col[k + 1] = 0.0;
        cs.push(c);
        sn.push(s);
        let gk = g[k];
        g[k] = c * gk;
        g.push(-s * gk);
        h.push(col);
        k += 1;
        let res = g[k].abs();
        history.push(res / bnorm);
        if res <= target {
            converged = true;
            break;
        }
        if hnext <= 1e-14 * beta {
            // Invariant subspace reached: the least-squares solution is exact.
            converged = true;
            break;
        }
        basis.push(w.iter().map(|v| v / hnext).collect());
    }
    let mut y = vec![0.0; k];
    for i in (0..k).rev() {
        let mut s = g[i];
        for j in i + 1..k {
            s -= h[j][i] * y[j];
        }
        if h[i][i] == 0.0 {
            return Err(Error::Breakdown { iteration: i + 1 });
        }
        y[i] = s / h[i][i];
    }
    for (yi, v) in y.iter().zip(&basis) {
        for (xj, vj) in x.iter_mut().zip(v) {
            *xj += yi * vj;
        }
    }
    check_finite(&x, "GMRES iterate")?;
    Ok(SolveReport {
        true_residual: true_residual(a, b, &x),
        x,
        iterations: k,
        converged,
        history,
        elapsed: start.elapsed(),
    })
}

/// Preconditioned MINRES for symmetric A and symmetric positive definite P.
/// Stops when the residual in the P^{-1} norm drops below tol times its
/// initial value.
pub fn minres(
    a: &dyn LinearMap,
    b: &[f64],
    x0: Option<&[f64]>,
    p: &dyn Preconditioner,
    opts: SolveOptions,
) -> Result<SolveReport> {
    let start = Instant::now();
    let n = a.dim();
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }
    check_finite(b, "right-hand side")?;
    let mut x = match x0 {
        Some(v) if v.len() != n => return Err(Error::DimensionMismatch { expected: n, got: v.len() }),
        Some(v) => v.to_vec(),
        None => vec![0.0; n],
    };
    let ax = a.apply(&x);
    let mut r1: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
    let mut y = p.solve(&r1)?;
    let beta1_sq = dot(&r1, &y);
    if beta1_sq < 0.0 {
        return Err(Error::Definiteness { index: 0, value: beta1_sq });
    }
    let mut history = vec![];
    if beta1_sq == 0.0 {
        return Ok(SolveReport {
            true_residual: true_residual(a, b, &x),
            x,
            iterations: 0,
            converged: true,
            history,
            elapsed: start.elapsed(),
        });
    }
    let beta1 = beta1_sq.sqrt();
    let mut r2 = r1.clone();
    let (mut oldb, mut beta) = (0.0, beta1);
    let (mut dbar, mut epsln, mut phibar) = (0.0, 0.0, beta1);
    let (mut cs, mut sn) = (-1.0f64, 0.0f64);
    let mut w = vec![0.0; n];
    let mut w2 = vec![0.0; n];
    let mut converged = false;
    let mut iterations = 0;
    for itn in 1..=opts.max_iter {
        iterations = itn;
        let s = 1.0 / beta;
        let v: Vec<f64> = y.iter().map(|t| t * s).collect();
        y = a.apply(&v);
        if itn >= 2 {
            let f = beta / oldb;
            for (yi, ri) in y.iter_mut().zip(&r1) {
                *yi -= f * ri;
            }
        }
        let alfa = dot(&v, &y);
        let f = alfa / beta;
        for (yi, ri) in y.iter_mut().zip(&r2) {
            *yi -= f * ri;
        }
        r1 = std::mem::replace(&mut r2, y);
        y = p.solve(&r2)?;
        oldb = beta;
        let bsq = dot(&r2, &y);
        if bsq < 0.0 {
            return Err(Error::Definiteness { index: itn, value: bsq });
        }
        beta = bsq.sqrt();
        let oldeps = epsln;
        let delta = cs * dbar + sn * alfa;
        let gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        let gamma = gbar.hypot(beta).max(f64::EPSILON);
        cs = gbar / gamma;
        sn = beta / gamma;
        let phi = cs * phibar;
        phibar *= sn;
        let w1 = std::mem::replace(&mut w2, w.clone());
        for i in 0..n {
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
            x[i] += phi * w[i];
        }
        let rel = phibar.abs() / beta1;
        if !rel.is_finite() {
            return Err(Error::Breakdown { iteration: itn });
        }
        history.push(rel);
        if rel <= opts.tol || beta == 0.0 {
            converged = true;
            break;
        }
    }
    check_finite(&x, "MINRES iterate")?;
    Ok(SolveReport {
        true_residual: true_residual(a, b, &x),
        x,
        iterations,
        converged,
        history,
        elapsed: start.elapsed(),
    })
}

/// Dense P^{-1} A assembled column by column.
pub fn preconditioned_dense(a: &dyn LinearMap, p: &dyn Preconditioner) -> Result<nalgebra::DMatrix<f64>> {
    let n = a.dim();
    let mut m = nalgebra::DMatrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = p.solve(&a.apply(&e))?;
        check_finite(&col, "preconditioned column")?;
        m.set_column(j, &nalgebra::DVector::from_vec(col));
        e[j] = 0.0;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn spd(n: usize) -> DMatrix<f64> {
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                4.0
            } else if i.abs_diff(j) == 1 {
                -1.0
            } else {
                0.0
            }
        })
    }

    #[test]
    fn gmres_identity_single_iteration() {
        let a = DMatrix::<f64>::identity(5, 5);
        let b = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        let r = gmres(&a, &b, None, &IdentityPreconditioner, SolveOptions::default()).unwrap();
        assert_eq!(r.iterations, 1);
        assert!(r.true_residual < 1e-14);
    }

    #[test]
    fn gmres_solves_nonsymmetric() {
        let n = 30;
        let a = DMatrix::from_fn(n, n, |i, j| if i == j { 3.0 } else { 1.0 / (1.0 + (i as f64 - 2.0 * j as f64).abs()) });
        let b: Vec<f64> = (0..n).map(|i| (i as f64).cos()).collect();
        let r = gmres(&a, &b, None, &IdentityPreconditioner, SolveOptions { tol: 1e-10, max_iter: 100 }).unwrap();
        assert!(r.converged);
        assert!(r.true_residual < 1e-9);
    }

    #[test]
    fn minres_matches_direct() {
        let a = spd(20);
        let b: Vec<f64> = (0..20).map(|i| 1.0 + i as f64).collect();
        let r = minres(&a, &b, None, &IdentityPreconditioner, SolveOptions { tol: 1e-12, max_iter: 100 }).unwrap();
        assert!(r.converged);
        assert!(r.true_residual < 1e-10);
    }

    #[test]
    fn zero_rhs_returns_zero() {
        let a = spd(4);
        let r = gmres(&a, &[0.0; 4], None, &IdentityPreconditioner, SolveOptions::default()).unwrap();
        assert_eq!(r.iterations, 0);
        assert!(r.x.iter().all(|&v| v == 0.0));
    }

    struct NegDef;
    impl Preconditioner for NegDef {
        fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
            Ok(b.iter().map(|v| -v).collect())
        }
    }

    #[test]
    fn minres_rejects_indefinite_preconditioner() {
        let a = spd(4);
        assert!(matches!(
            minres(&a, &[1.0; 4], None, &NegDef, SolveOptions::default()),
            Err(Error::Definiteness { .. })
        ));
    }
}
