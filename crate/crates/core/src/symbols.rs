//! Generating symbols f(theta) = sum a_k e^{ik theta} and their sampling grids.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::matfun::AnalyticFn;
use crate::{Error, Result};

/// Interval on which a symbol is declared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolDomain {
    /// 2pi-periodic symbol declared on [-pi, pi].
    Periodic,
    /// Symmetrized symbol on [-2pi, 2pi].
    Symmetrized,
}

type EvalFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A symbol as an evaluable function together with its declared domain.
#[derive(Clone)]
pub struct FourierSymbol {
    eval: EvalFn,
    pub domain: SymbolDomain,
    pub name: String,
}

impl std::fmt::Debug for FourierSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FourierSymbol").field("name", &self.name).field("domain", &self.domain).finish()
    }
}

fn one_minus_e(theta: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, theta)
}

fn frac_pow(z: Complex64, alpha: f64) -> Complex64 {
    if z.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        z.powf(alpha)
    }
}

impl FourierSymbol {
    pub fn new(name: impl Into<String>, domain: SymbolDomain, f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self { eval: Arc::new(f), domain, name: name.into() }
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        (self.eval)(theta)
    }

    /// Trigonometric polynomial from (k, a_k) pairs.
    pub fn trig_poly(name: impl Into<String>, terms: Vec<(i64, Complex64)>) -> Self {
        Self::new(name, SymbolDomain::Periodic, move |t| {
            terms.iter().map(|&(k, a)| a * Complex64::from_polar(1.0, k as f64 * t)).sum()
        })
    }

    /// g_alpha(theta) = -e^{-i theta} (1 - e^{i theta})^alpha.
    pub fn g_alpha(alpha: f64) -> Self {
        Self::new(format!("g_{alpha}"), SymbolDomain::Periodic, move |t| {
            -Complex64::from_polar(1.0, -t) * frac_pow(one_minus_e(t), alpha)
        })
    }

    /// p_alpha = g_alpha + conj(g_alpha), real valued.
    pub fn p_alpha(alpha: f64) -> Self {
        let g = Self::g_alpha(alpha);
        Self::new(format!("p_{alpha}"), SymbolDomain::Periodic, move |t| {
            Complex64::new(2.0 * g.eval(t).re, 0.0)
        })
    }

    /// w_alpha(theta) = -((2 - alpha(1 - e^{-i theta}))/2)(1 - e^{i theta})^alpha.
    pub fn w_alpha(alpha: f64) -> Self {
        Self::new(format!("w_{alpha}"), SymbolDomain::Periodic, move |t| {
            let lead = (Complex64::new(2.0, 0.0) - alpha * one_minus_e(-t)) * 0.5;
            -lead * frac_pow(one_minus_e(t), alpha)
        })
    }

    /// q_alpha = w_alpha + conj(w_alpha), real valued.
    pub fn q_alpha(alpha: f64) -> Self {
        let w = Self::w_alpha(alpha);
        Self::new(format!("q_{alpha}"), SymbolDomain::Periodic, move |t| {
            Complex64::new(2.0 * w.eval(t).re, 0.0)
        })
    }

    /// Pointwise composition h(f(theta)).
    pub fn compose(h: AnalyticFn, f: &FourierSymbol) -> Self {
        let f = f.clone();
        let name = format!("{}∘{}", h.name(), f.name);
        Self::new(name, f.domain, move |t| h.eval(f.eval(t)))
    }

    /// Pointwise modulus.
    pub fn abs(&self) -> Self {
        let f = self.clone();
        Self::new(format!("|{}|", f.name), f.domain, move |t| Complex64::new(f.eval(t).norm(), 0.0))
    }

    /// psi_{|f|} on [-2pi, 2pi]: |f(theta)| for theta >= 0 and -|f(theta + 2pi)| otherwise.
    pub fn symmetrized(&self) -> Self {
        let f = self.clone();
        Self::new(format!("psi_|{}|", f.name), SymbolDomain::Symmetrized, move |t| {
            let v = if t < 0.0 { -f.eval(t + 2.0 * PI).norm() } else { f.eval(t).norm() };
            Complex64::new(v, 0.0)
        })
    }
}

/// Standard sampling grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolGrid {
    /// theta_j = j pi/(n+1), j = 1..n.
    Tau(usize),
    /// theta_j = 2 pi j/n, j = 0..n-1.
    Circulant(usize),
    /// n equispaced points on [-2pi, 2pi], endpoints included.
    Symmetrized(usize),
}

impl SymbolGrid {
    pub fn points(&self) -> Vec<f64> {
        match *self {
            SymbolGrid::Tau(n) => (1..=n).map(|j| j as f64 * PI / (n + 1) as f64).collect(),
            SymbolGrid::Circulant(n) => (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect(),
            SymbolGrid::Symmetrized(1) => vec![0.0],
            SymbolGrid::Symmetrized(n) => {
                let h = 4.0 * PI / (n - 1) as f64;
                (0..n).map(|j| -2.0 * PI + j as f64 * h).collect()
            }
        }
    }
}

/// Samples a symbol on a grid.
pub fn sample_symbol(f: &FourierSymbol, grid: SymbolGrid) -> Result<Vec<Complex64>> {
    let pts = grid.points();
    if f.domain == SymbolDomain::Periodic {
        if let SymbolGrid::Symmetrized(_) = grid {
            return Err(Error::Domain { theta: pts.first().copied().unwrap_or(-2.0 * PI) });
        }
    }
    let out: Vec<Complex64> = pts.iter().map(|&t| f.eval(t)).collect();
    if let Some(i) = out.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NonFinite(format!("symbol sample at theta = {}", pts[i])));
    }
    Ok(out)
}
