//! Closed-form reference values.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::params::PutParams;

/// Perpetual American put boundary K phi / (1 - phi) with
/// phi = sigma^{-2}(sigma^2/2 - r - sqrt((r - sigma^2/2)^2 + 2 r sigma^2)).
pub fn perpetual_put_boundary(params: &PutParams) -> f64 {
    let (r, s2) = (params.r, params.sigma * params.sigma);
    let phi = (s2 / 2.0 - r - ((r - s2 / 2.0).powi(2) + 2.0 * r * s2).sqrt()) / s2;
    params.strike * phi / (phi - 1.0)
}

/// Black-Scholes European put at spot x with time to expiry tau.
pub fn european_put(params: &PutParams, x: f64, tau: f64) -> f64 {
    let k = params.strike;
    if tau <= 0.0 {
        return params.payoff(x);
    }
    let n = Normal::standard();
    let sd = params.sigma * tau.sqrt();
    let d1 = ((x / k).ln() + (params.r + 0.5 * params.sigma * params.sigma) * tau) / sd;
    let d2 = d1 - sd;
    k * (-params.r * tau).exp() * n.cdf(-d2) - x * n.cdf(-d1)
}
