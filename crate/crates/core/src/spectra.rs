//! Dense spectral diagnostics: eigenvalues, singular values, comparison of a
//! spectrum with symbol samples, clustering counts and enclosing circles.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::symbols::{sample_symbol, FourierSymbol, SymbolGrid};
use crate::{Error, Result};

fn square(a: &DMatrix<f64>) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("matrix entry".into()));
    }
    Ok(())
}

/// Eigenvalues of a general real matrix (Schur form), sorted by real then
/// imaginary part.
pub fn dense_eigs(a: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    square(a)?;
    let mut ev: Vec<Complex64> = a.clone().complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(ev)
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigs(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    square(a)?;
    let mut ev: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Singular values, descending.
pub fn singular_values(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("matrix entry".into()));
    }
    let mut sv: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// 2-norm condition number sigma_max / sigma_min.
pub fn condition_number(a: &DMatrix<f64>) -> Result<f64> {
    square(a)?;
    let sv = singular_values(a)?;
    let min = *sv.last().unwrap_or(&0.0);
    Ok(if min == 0.0 { f64::INFINITY } else { sv[0] / min })
}

/// How spectrum values and symbol samples are ordered before pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareMode {
    /// Real eigenvalues against real samples, both ascending.
    Eigenvalues,
    /// Singular values against sample moduli, both ascending.
    SingularValues,
}

/// Result of pairing sorted values with sorted samples.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionComparison {
    pub max_deviation: f64,
    pub outliers: usize,
    pub deviations: Vec<f64>,
}

/// Pairs sorted values with sorted samples of equal count.
pub fn compare_sorted(values: &[f64], samples: &[f64], eps: f64) -> Result<DistributionComparison> {
    if values.len() != samples.len() {
        return Err(Error::DimensionMismatch { expected: values.len(), got: samples.len() });
    }
    let mut v = values.to_vec();
    let mut s = samples.to_vec();
    v.sort_by(f64::total_cmp);
    s.sort_by(f64::total_cmp);
    let deviations: Vec<f64> = v.iter().zip(&s).map(|(a, b)| (a - b).abs()).collect();
    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    let outliers = deviations.iter().filter(|&&d| d > eps).count();
    Ok(DistributionComparison { max_deviation, outliers, deviations })
}

/// Compares a spectrum with samples of a symbol on a grid of the same size.
pub fn distribution_compare(
    values: &[f64],
    symbol: &FourierSymbol,
    grid: SymbolGrid,
    mode: CompareMode,
    eps: f64,
) -> Result<DistributionComparison> {
    let samples = sample_symbol(symbol, grid)?;
    let s: Vec<f64> = match mode {
        CompareMode::Eigenvalues => samples.iter().map(|z| z.re).collect(),
        CompareMode::SingularValues => samples.iter().map(|z| z.norm()).collect(),
    };
    compare_sorted(values, &s, eps)
}

/// Where clustered values are expected.
#[derive(Debug, Clone, PartialEq)]
pub enum ClusterTarget {
    Points(Vec<Complex64>),
    Interval(f64, f64),
}

/// Number of values farther than eps from the target set.
pub fn cluster_outliers(values: &[Complex64], target: &ClusterTarget, eps: f64) -> usize {
    values
        .iter()
        .filter(|&&z| {
            let d = match target {
                ClusterTarget::Points(p) => p.iter().map(|&c| (z - c).norm()).fold(f64::INFINITY, f64::min),
                ClusterTarget::Interval(a, b) => {
                    let re = z.re.clamp(*a, *b);
                    Complex64::new(z.re - re, z.im).norm()
                }
            };
            d > eps
        })
        .count()
}

/// Circle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    fn contains(&self, p: Complex64) -> bool {
        (p - self.center).norm() <= self.radius * (1.0 + 1e-12) + 1e-12
    }

    fn from_two(a: Complex64, b: Complex64) -> Self {
        let c = (a + b) * 0.5;
        Self { center: c, radius: (a - c).norm() }
    }

    fn from_three(a: Complex64, b: Complex64, c: Complex64) -> Option<Self> {
        let (bx, by) = (b.re - a.re, b.im - a.im);
        let (cx, cy) = (c.re - a.re, c.im - a.im);
        let d = 2.0 * (bx * cy - by * cx);
        if d.abs() < 1e-300 {
            return None;
        }
        let b2 = bx * bx + by * by;
        let c2 = cx * cx + cy * cy;
        let ux = (cy * b2 - by * c2) / d;
        let uy = (bx * c2 - cx * b2) / d;
        let center = Complex64::new(a.re + ux, a.im + uy);
        Some(Self { center, radius: ux.hypot(uy) })
    }
}

/// Smallest enclosing circle (Welzl's algorithm in its iterative
/// move-to-front form, with a fixed pseudo-random point order).
pub fn enclosing_circle(points: &[Complex64]) -> Result<Circle> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("no points".into()));
    }
    if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
        return Err(Error::NonFinite("point".into()));
    }
    let mut pts = points.to_vec();
    // Deterministic shuffle keeps the expected linear running time.
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    for i in (1..pts.len()).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        pts.swap(i, (state % (i as u64 + 1)) as usize);
    }
    let mut c = Circle { center: pts[0], radius: 0.0 };
    for i in 1..pts.len() {
        if c.contains(pts[i]) {
            continue;
        }
        c = Circle { center: pts[i], radius: 0.0 };
        for j in 0..i {
            if c.contains(pts[j]) {
                continue;
            }
            c = Circle::from_two(pts[i], pts[j]);
            for k in 0..j {
                if c.contains(pts[k]) {
                    continue;
                }
                c = Circle::from_three(pts[i], pts[j], pts[k]).unwrap_or_else(|| {
                    // Collinear: the widest pair spans the circle.
                    let cands = [
                        Circle::from_two(pts[i], pts[j]),
                        Circle::from_two(pts[i], pts[k]),
                        Circle::from_two(pts[j], pts[k]),
                    ];
                    cands.into_iter().max_by(|a, b| a.radius.total_cmp(&b.radius)).unwrap()
                });
            }
        }
    }
    Ok(c)
}

/// Spectral summary of a (preconditioned) matrix.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Complex64>,
    pub singular_values: Vec<f64>,
    pub condition_number: f64,
    pub circle: Circle,
    /// Eigenvalues divided by the enclosing circle center.
    pub scaled_eigenvalues: Vec<Complex64>,
}

pub fn spectrum_report(a: &DMatrix<f64>) -> Result<SpectrumReport> {
    let eigenvalues = dense_eigs(a)?;
    let singular_values = singular_values(a)?;
    let min = *singular_values.last().unwrap();
    let condition_number = if min == 0.0 { f64::INFINITY } else { singular_values[0] / min };
    let circle = enclosing_circle(&eigenvalues)?;
    let scaled_eigenvalues = if circle.center.norm() > 0.0 {
        eigenvalues.iter().map(|z| z / circle.center).collect()
    } else {
        eigenvalues.clone()
    };
    Ok(SpectrumReport { eigenvalues, singular_values, condition_number, circle, scaled_eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_of_square_corners() {
        let pts = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (0.2, 0.3)]
            .map(|(a, b)| Complex64::new(a, b));
        let c = enclosing_circle(&pts).unwrap();
        assert!(c.center.norm() < 1e-12);
        assert!((c.radius - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn circle_single_point_and_collinear() {
        let c = enclosing_circle(&[Complex64::new(2.0, 3.0)]).unwrap();
        assert_eq!(c.radius, 0.0);
        let line: Vec<Complex64> = (0..5).map(|i| Complex64::new(i as f64, 0.0)).collect();
        let c = enclosing_circle(&line).unwrap();
        assert!((c.radius - 2.0).abs() < 1e-12);
        assert!((c.center - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn outlier_count() {
        let v = [0.95, 1.02, -1.05, 0.5].map(|x| Complex64::new(x, 0.0));
        let t = ClusterTarget::Points(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert_eq!(cluster_outliers(&v, &t, 0.1), 1);
        assert_eq!(cluster_outliers(&v, &ClusterTarget::Interval(0.4, 1.1), 0.0), 1);
    }

    #[test]
    fn condition_of_diagonal() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 4.0, 2.0]));
        assert!((condition_number(&a).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn sorted_comparison() {
        let r = compare_sorted(&[3.0, 1.0, 2.0], &[1.1, 2.0, 3.6], 0.5).unwrap();
        assert_eq!(r.outliers, 1);
        assert!((r.max_deviation - 0.6).abs() < 1e-12);
    }
}
