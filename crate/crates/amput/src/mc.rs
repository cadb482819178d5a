//! Monte Carlo value of the stopping rule "exercise when the path first
//! reaches the boundary".

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::params::{Boundary, PutParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Standard deviation of the mean.
    pub stderr: f64,
    pub paths: usize,
}

/// Simulates geometric Brownian motion from `s0` with `tau0` years to expiry
/// and time step `step`, exercising at the first step where the path is at or
/// below the linearly interpolated boundary.
pub fn mc_simulate(
    params: &PutParams,
    boundary: &Boundary,
    s0: f64,
    tau0: f64,
    paths: usize,
    step: f64,
    seed: u64,
) -> McEstimate {
    let steps = (tau0 / step).round().max(1.0) as usize;
    let dt = tau0 / steps as f64;
    let drift = (params.r - 0.5 * params.sigma * params.sigma) * dt;
    let vol = params.sigma * dt.sqrt();
    let levels: Vec<f64> = (0..=steps).map(|k| boundary.at(tau0 - k as f64 * dt)).collect();
    let discounts: Vec<f64> = (0..=steps).map(|k| (-params.r * k as f64 * dt).exp()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..paths {
        let mut z = s0;
        let mut pv = 0.0;
        for k in 0..=steps {
            if k > 0 {
                let e: f64 = StandardNormal.sample(&mut rng);
                z *= (drift + vol * e).exp();
            }
            if z <= levels[k] || k == steps {
                pv = params.payoff(z) * discounts[k];
                break;
            }
        }
        sum += pv;
        sum_sq += pv * pv;
    }
    let n = paths as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
    McEstimate { mean, stderr: (var / n).sqrt(), paths }
}
