//! Grünwald–Letnikov coefficients g_k = (-1)^k C(alpha, k) and the
//! second-order weighted combination w_k.

use crate::{Error, Result};

/// Coefficients of (1 - z)^order, for any real order, via the ratio recurrence.
pub fn binomial_weights(order: f64, len: usize) -> Vec<f64> {
    let mut g = Vec::with_capacity(len);
    if len == 0 {
        return g;
    }
    g.push(1.0);
    for k in 0..len.saturating_sub(1) {
        let k = k as f64;
        let next = -((order - k) / (k + 1.0)) * g[g.len() - 1];
        g.push(next);
    }
    g
}

fn check_order(alpha: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::InvalidArgument(format!(
            "fractional order must lie in (1, 2), got {alpha}"
        )));
    }
    Ok(())
}

/// Returns g_0..g_k_max for an order in (1, 2).
pub fn grunwald_coeffs(alpha: f64, k_max: usize) -> Result<Vec<f64>> {
    check_order(alpha)?;
    Ok(binomial_weights(alpha, k_max + 1))
}

/// Returns w_0..w_k_max with w_0 = alpha/2 and
/// w_k = (alpha/2) g_k + ((2 - alpha)/2) g_{k-1}.
pub fn weighted_grunwald_coeffs(alpha: f64, k_max: usize) -> Result<Vec<f64>> {
    let g = grunwald_coeffs(alpha, k_max)?;
    let a = alpha / 2.0;
    let b = (2.0 - alpha) / 2.0;
    Ok((0..=k_max)
        .map(|k| if k == 0 { a * g[0] } else { a * g[k] + b * g[k - 1] })
        .collect())
}
