//! Problem definitions and the benchmark examples.

use std::sync::Arc;

use statrs::function::gamma::gamma;

use tauprec_core::{Error, Result};

pub type Field1 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type Field2 = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// u_t = d_+ D_+^alpha u + d_- D_-^alpha u + f on (left, right) x (0, horizon],
/// homogeneous Dirichlet data and u(x, 0) = initial(x).
#[derive(Clone)]
pub struct DiffusionProblem1d {
    pub alpha: f64,
    pub left: f64,
    pub right: f64,
    pub horizon: f64,
    /// Interior grid points.
    pub n: usize,
    /// Number of time steps.
    pub steps: usize,
    /// d_+(x, t)
    pub d_plus: Field1,
    /// d_-(x, t)
    pub d_minus: Field1,
    /// f(x, t)
    pub source: Field1,
    /// u(x, 0) as u0(x, 0)
    pub initial: Field1,
    pub exact: Option<Field1>,
}

fn check_order(name: &str, a: f64) -> Result<()> {
    if a > 1.0 && a < 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must lie in (1, 2), got {a}")))
    }
}

impl DiffusionProblem1d {
    pub fn validate(&self) -> Result<()> {
        check_order("alpha", self.alpha)?;
        if self.n == 0 || self.steps == 0 {
            return Err(Error::InvalidArgument("grid sizes must be positive".into()));
        }
        if !(self.right > self.left) || !(self.horizon > 0.0) {
            return Err(Error::InvalidArgument("empty space or time interval".into()));
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        (self.right - self.left) / (self.n + 1) as f64
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    /// Interior nodes x_1..x_n.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.h();
        (1..=self.n).map(|i| self.left + i as f64 * h).collect()
    }

    /// nu = h^alpha / dt.
    pub fn nu(&self) -> f64 {
        self.h().powf(self.alpha) / self.dt()
    }
}

/// Two-dimensional analogue with coefficients d_+-, e_+- for the x and y
/// derivatives of orders alpha and beta.
#[derive(Clone)]
pub struct DiffusionProblem2d {
    pub alpha: f64,
    pub beta: f64,
    /// [x0, x1] x [y0, y1]
    pub domain: [f64; 4],
    pub horizon: f64,
    pub n1: usize,
    pub n2: usize,
    pub steps: usize,
    pub d_plus: Field2,
    pub d_minus: Field2,
    pub e_plus: Field2,
    pub e_minus: Field2,
    pub source: Field2,
    pub initial: Field2,
    pub exact: Option<Field2>,
}

impl DiffusionProblem2d {
    pub fn validate(&self) -> Result<()> {
        check_order("alpha", self.alpha)?;
        check_order("beta", self.beta)?;
        if self.n1 == 0 || self.n2 == 0 || self.steps == 0 {
            return Err(Error::InvalidArgument("grid sizes must be positive".into()));
        }
        let [x0, x1, y0, y1] = self.domain;
        if !(x1 > x0) || !(y1 > y0) || !(self.horizon > 0.0) {
            return Err(Error::InvalidArgument("empty space or time interval".into()));
        }
        Ok(())
    }

    pub fn hx(&self) -> f64 {
        (self.domain[1] - self.domain[0]) / (self.n1 + 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.domain[3] - self.domain[2]) / (self.n2 + 1) as f64
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    /// r = dt / (2 hx^alpha).
    pub fn r(&self) -> f64 {
        self.dt() / (2.0 * self.hx().powf(self.alpha))
    }

    /// s = dt / (2 hy^beta).
    pub fn s(&self) -> f64 {
        self.dt() / (2.0 * self.hy().powf(self.beta))
    }

    /// Interior nodes, x index fastest.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        let (hx, hy) = (self.hx(), self.hy());
        let mut v = Vec::with_capacity(self.n1 * self.n2);
        for j in 1..=self.n2 {
            for i in 1..=self.n1 {
                v.push((self.domain[0] + i as f64 * hx, self.domain[2] + j as f64 * hy));
            }
        }
        v
    }
}

/// One-dimensional benchmark on [0, 2] x [0, 1] with variable coefficients
/// and exact solution 4 e^{-t} x^2 (2 - x)^2; n + 1 spatial intervals and
/// (n + 1)/2 time steps so that dt = h.
pub fn example_1d(alpha: f64, n: usize) -> DiffusionProblem1d {
    let c = gamma(3.0 - alpha);
    let a = alpha;
    DiffusionProblem1d {
        alpha,
        left: 0.0,
        right: 2.0,
        horizon: 1.0,
        n,
        steps: ((n + 1) / 2).max(1),
        d_plus: Arc::new(move |x, _| c * x.powf(a)),
        d_minus: Arc::new(move |x, _| c * (2.0 - x).powf(a)),
        source: Arc::new(move |x, t| {
            let y = 2.0 - x;
            -32.0
                * (-t).exp()
                * (x * x + y * y * (8.0 + x * x) / 8.0 - 3.0 * (x.powi(3) + y.powi(3)) / (3.0 - a)
                    + 3.0 * (x.powi(4) + y.powi(4)) / ((4.0 - a) * (3.0 - a)))
        }),
        initial: Arc::new(|x, _| 4.0 * x * x * (2.0 - x) * (2.0 - x)),
        exact: Some(Arc::new(|x, t| 4.0 * (-t).exp() * x * x * (2.0 - x) * (2.0 - x))),
    }
}

/// Two-dimensional benchmark on [0, 2]^2 with exact solution
/// 16 e^{-t} x^2 (2-x)^2 y^2 (2-y)^2, n = n1 = n2 interior points per
/// direction and n time steps.
pub fn example_2d(alpha: f64, beta: f64, n: usize) -> DiffusionProblem2d {
    let ca = gamma(3.0 - alpha);
    let cb = gamma(3.0 - beta);
    let (a, b) = (alpha, beta);
    // f_g(x, y) from the manufactured solution.
    let fpart = move |g: f64, x: f64, y: f64| {
        (8.0 * x.powf(2.0 - g) - 24.0 * x.powf(3.0 - g) / (3.0 - g)
            + 24.0 * x.powf(4.0 - g) / ((4.0 - g) * (3.0 - g)))
            * (1.0 + x).powf(g)
            * (1.0 + y).powi(2)
            * y
            * y
            * (2.0 - y)
            * (2.0 - y)
    };
    DiffusionProblem2d {
        alpha,
        beta,
        domain: [0.0, 2.0, 0.0, 2.0],
        horizon: 1.0,
        n1: n,
        n2: n,
        steps: n,
        d_plus: Arc::new(move |x, y, _| ca * (1.0 + x).powf(a) * (1.0 + y).powi(2)),
        d_minus: Arc::new(move |x, y, _| ca * (3.0 - x).powf(a) * (3.0 - y).powi(2)),
        e_plus: Arc::new(move |x, y, _| cb * (1.0 + x).powi(2) * (1.0 + y).powf(b)),
        e_minus: Arc::new(move |x, y, _| cb * (3.0 - x).powi(2) * (3.0 - y).powf(b)),
        source: Arc::new(move |x, y, t| {
            let u = x * x * (2.0 - x).powi(2) * y * y * (2.0 - y).powi(2);
            -16.0
                * (-t).exp()
                * (u + fpart(a, x, y) + fpart(a, 2.0 - x, 2.0 - y) + fpart(b, y, x) + fpart(b, 2.0 - y, 2.0 - x))
        }),
        initial: Arc::new(|x, y, _| x * x * y * y * (2.0 - x).powi(2) * (2.0 - y).powi(2)),
        exact: Some(Arc::new(|x, y, t| {
            16.0 * (-t).exp() * x * x * (2.0 - x).powi(2) * y * y * (2.0 - y).powi(2)
        })),
    }
}

/// Constant-coefficient two-dimensional problem d_+- = d, e_+- = e.
pub fn constant_2d(alpha: f64, beta: f64, n: usize, d: f64, e: f64) -> DiffusionProblem2d {
    DiffusionProblem2d {
        alpha,
        beta,
        domain: [0.0, 2.0, 0.0, 2.0],
        horizon: 1.0,
        n1: n,
        n2: n,
        steps: n,
        d_plus: Arc::new(move |_, _, _| d),
        d_minus: Arc::new(move |_, _, _| d),
        e_plus: Arc::new(move |_, _, _| e),
        e_minus: Arc::new(move |_, _, _| e),
        source: Arc::new(|_, _, _| 0.0),
        initial: Arc::new(|x, y, _| x * y * (2.0 - x) * (2.0 - y)),
        exact: None,
    }
}
