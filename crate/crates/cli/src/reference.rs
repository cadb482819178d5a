//! Published benchmark values the reproduction is checked against.

/// (iterations, condition number) for one preconditioner at one size.
pub type ItKappa = (f64, f64);

/// One-dimensional benchmark row: alpha, n + 1, identity, tau symbol, full
/// symbol, tridiagonal, alternative symbol.
#[derive(Debug, Clone, Copy)]
pub struct Fde1dRow {
    pub alpha: f64,
    pub n_plus_1: usize,
    pub identity: ItKappa,
    pub tau: ItKappa,
    pub full: ItKappa,
    pub tri: ItKappa,
    pub alt: ItKappa,
}

const fn row1(alpha: f64, n_plus_1: usize, identity: ItKappa, full: ItKappa, tau: ItKappa, tri: ItKappa, alt: ItKappa) -> Fde1dRow {
    Fde1dRow { alpha, n_plus_1, identity, tau, full, tri, alt }
}

pub const FDE1D: [Fde1dRow; 12] = [
    row1(1.2, 64, (28.0, 9.6), (14.0, 1.6), (7.2, 30.8), (5.0, 1.3), (7.5, 29.2)),
    row1(1.2, 128, (39.0, 11.5), (14.0, 1.8), (8.6, 63.7), (5.0, 1.4), (8.5, 58.7)),
    row1(1.2, 256, (46.0, 13.4), (14.0, 2.0), (9.9, 132.2), (5.0, 1.5), (9.9, 118.6)),
    row1(1.2, 512, (51.0, 15.5), (13.0, 2.2), (9.9, 274.7), (5.0, 1.5), (9.9, 239.7)),
    row1(1.5, 64, (32.0, 33.4), (13.0, 1.8), (6.7, 16.1), (7.0, 2.4), (8.7, 13.6)),
    row1(1.5, 128, (60.0, 51.2), (13.0, 2.1), (8.0, 33.3), (8.0, 3.0), (8.0, 26.3)),
    row1(1.5, 256, (89.0, 75.8), (13.0, 2.3), (8.5, 70.9), (11.0, 4.0), (8.4, 51.8)),
    row1(1.5, 512, (122.0, 109.9), (12.0, 2.6), (10.0, 152.7), (13.0, 5.4), (9.9, 103.0)),
    row1(1.8, 64, (32.0, 136.5), (10.0, 2.6), (6.1, 9.7), (7.0, 3.5), (8.0, 9.0)),
    row1(1.8, 128, (67.0, 266.3), (11.0, 2.8), (6.8, 19.5), (10.0, 5.6), (7.8, 17.0)),
    row1(1.8, 256, (131.0, 494.8), (10.0, 2.9), (7.0, 40.8), (15.0, 9.4), (6.9, 33.1)),
    row1(1.8, 512, (231.2, 893.8), (9.0, 2.9), (8.6, 86.9), (22.0, 16.6), (7.0, 65.4)),
];

pub fn fde1d_row(alpha: f64, n_plus_1: usize) -> Option<&'static Fde1dRow> {
    FDE1D.iter().find(|r| (r.alpha - alpha).abs() < 1e-9 && r.n_plus_1 == n_plus_1)
}

/// Two-dimensional benchmark row: alpha, beta, n1 = n2, identity, tau symbol.
#[derive(Debug, Clone, Copy)]
pub struct Fde2dRow {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
    pub identity: ItKappa,
    pub tau: ItKappa,
}

pub const FDE2D: [Fde2dRow; 8] = [
    Fde2dRow { alpha: 1.8, beta: 1.6, n: 16, identity: (37.0, 57.4), tau: (8.0, 1.9) },
    Fde2dRow { alpha: 1.8, beta: 1.6, n: 32, identity: (73.0, 167.4), tau: (8.0, 2.7) },
    Fde2dRow { alpha: 1.8, beta: 1.6, n: 64, identity: (137.0, 429.4), tau: (9.0, 4.3) },
    Fde2dRow { alpha: 1.8, beta: 1.6, n: 128, identity: (251.0, 966.8), tau: (9.0, 7.7) },
    Fde2dRow { alpha: 1.8, beta: 1.2, n: 16, identity: (49.0, 57.8), tau: (10.0, 1.9) },
    Fde2dRow { alpha: 1.8, beta: 1.2, n: 32, identity: (92.0, 162.9), tau: (12.0, 2.7) },
    Fde2dRow { alpha: 1.8, beta: 1.2, n: 64, identity: (173.0, 401.7), tau: (13.0, 4.4) },
    Fde2dRow { alpha: 1.8, beta: 1.2, n: 128, identity: (316.0, 876.4), tau: (14.5, 7.9) },
];

pub fn fde2d_row(alpha: f64, beta: f64, n: usize) -> Option<&'static Fde2dRow> {
    FDE2D.iter().find(|r| (r.alpha - alpha).abs() < 1e-9 && (r.beta - beta).abs() < 1e-9 && r.n == n)
}

/// Exercise boundary of the put with r = 0.1, sigma = 0.3, K = 100, T = 1:
/// (time to expiry, policy iteration, adjusted Brennan-Schwartz).
pub const PUT_BOUNDARY: [(f64, f64, f64); 12] = [
    (0.0868, 87.3735, 87.3842),
    (0.1515, 85.0142, 85.0140),
    (0.2321, 83.0725, 83.0649),
    (0.3039, 81.8029, 81.7972),
    (0.3697, 80.8666, 80.8589),
    (0.4480, 79.9438, 79.9364),
    (0.5083, 79.3373, 79.3312),
    (0.5761, 78.7375, 78.7328),
    (0.6521, 78.1472, 78.1428),
    (0.7376, 77.5655, 77.5623),
    (0.8335, 76.9949, 76.9919),
    (0.9413, 76.4356, 76.4336),
];

/// Monte Carlo check points: (asset price, option value, reported standard
/// deviation of the simulation).
pub const PUT_SIMULATION: [(f64, f64, f64); 10] = [
    (86.56, 15.236, 0.215),
    (96.94, 9.558, 0.214),
    (107.32, 5.883, 0.184),
    (117.71, 3.563, 0.149),
    (128.09, 2.142, 0.119),
    (138.47, 1.271, 0.091),
    (148.85, 0.751, 0.055),
    (159.24, 0.445, 0.043),
    (169.62, 0.267, 0.035),
    (180.00, 0.168, 0.030),
];

/// Time to expiry labelled on the simulation table.
pub const PUT_SIMULATION_TAU: f64 = 0.5;

/// Perpetual put boundary for the same market parameters.
pub const PERPETUAL_BOUNDARY: f64 = 68.9655;
