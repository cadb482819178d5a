use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use tauprec_core::algebras::{dst1_apply, optimal_frobenius_circulant, TauOperator};
use tauprec_core::flipped::{flipped_matrix_function, SpectralExample};
use tauprec_core::krylov::{gmres, minres, IdentityPreconditioner, SolveOptions};
use tauprec_core::matfun::{matrix_function_dense, AnalyticFn};
use tauprec_core::symbols::{FourierSymbol, SymbolDomain};
use tauprec_core::toeplitz::{fourier_coeffs_fft_with, ToeplitzOperator};
use tauprec_core::Complex64;

fn geometric(theta: f64) -> Complex64 {
    1.0 / (Complex64::new(1.0, 0.0) - 0.5 * Complex64::from_polar(1.0, theta))
}

#[test]
fn fft_coefficients_carry_exact_alias_sum() {
    // a_k = 2^-k for k >= 0, so the m-point estimate of a_k is 2^-k / (1 - 2^-m)
    // and that of a_{-k} is 2^-(m-k) / (1 - 2^-m).
    for (n, m) in [(4, 7), (8, 16), (16, 40)] {
        let c = fourier_coeffs_fft_with(geometric, n, m).unwrap();
        let q = 1.0 - 0.5f64.powi(m as i32);
        for (idx, z) in c.iter().enumerate() {
            let k = idx as i32 - (n as i32 - 1);
            let want = if k >= 0 { 0.5f64.powi(k) / q } else { 0.5f64.powi(m as i32 + k) / q };
            assert!((z.re - want).abs() < 1e-14 && z.im.abs() < 1e-14, "n={n} m={m} k={k}: {z} vs {want}");
        }
    }
}

#[test]
fn fft_coefficients_exact_for_trig_polynomials() {
    let f = |t: f64| Complex64::new(3.0 + 2.0 * t.cos() - (2.0 * t).sin(), 0.0);
    let c = fourier_coeffs_fft_with(f, 5, 9).unwrap();
    let i = Complex64::new(0.0, 0.5);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let want = [zero, zero, -i, one, 3.0 * one, one, i, zero, zero];
    for (z, w) in c.iter().zip(want) {
        assert!((z - w).norm() < 1e-14, "{z} vs {w}");
    }
}

#[test]
fn frobenius_circulant_matches_averaging_formula() {
    let n = 12;
    let coeffs: Vec<f64> = (0..2 * n - 1).map(|i| ((i * 37 % 17) as f64 - 8.0) / 5.0).collect();
    let t = ToeplitzOperator::from_real(&coeffs).unwrap();
    let c = optimal_frobenius_circulant(&t).first_column();
    for k in 0..n {
        let want = if k == 0 {
            t.coeff(0).re
        } else {
            ((n - k) as f64 * t.coeff(k as i64).re + k as f64 * t.coeff(k as i64 - n as i64).re) / n as f64
        };
        assert!((c[k].re - want).abs() < 1e-13, "k={k}: {} vs {want}", c[k].re);
    }
}

#[test]
fn flipped_matrices_are_symmetric() {
    for ex in [SpectralExample::SinExp, SpectralExample::LogHalf, SpectralExample::Polynomial] {
        let a = flipped_matrix_function(&ex.h(), &ex.toeplitz(24).unwrap()).unwrap();
        assert!((&a - a.transpose()).amax() < 1e-10 * a.amax(), "{}", ex.name());
    }
}

#[test]
fn flipped_polynomial_matches_explicit_powers() {
    let t = ToeplitzOperator::from_real(&[0.1, -0.3, 0.7, 0.2, -0.4]).unwrap();
    let d = t.to_dense_real();
    let h = AnalyticFn::Poly(vec![1.0, 1.0, 1.0]);
    let explicit = DMatrix::identity(3, 3) + &d + &d * &d;
    let y = DMatrix::from_fn(3, 3, |i, j| if i + j == 2 { 1.0 } else { 0.0 });
    let got = flipped_matrix_function(&h, &t).unwrap();
    assert!((got - y * &explicit).amax() < 1e-13);
    assert!((matrix_function_dense(&h, &d).unwrap() - explicit).amax() < 1e-13);
}

#[test]
fn symmetrized_symbol_is_odd_extension() {
    let g = FourierSymbol::new("g", SymbolDomain::Periodic, |t: f64| Complex64::new(1.0 + t.cos() + 0.3 * t, 0.0));
    let psi = g.symmetrized();
    for t in [0.0, 0.5, 2.0, 6.0] {
        assert!((psi.eval(t).re - g.eval(t).norm()).abs() < 1e-14);
        assert!((psi.eval(t - 2.0 * PI).re + g.eval(t).norm()).abs() < 1e-14);
    }
}

#[test]
fn krylov_solvers_match_dense_lu() {
    let n = 30;
    let a = DMatrix::from_fn(n, n, |i, j| if i == j { 4.0 } else { 1.0 / (1.0 + (i as f64 - 2.0 * j as f64).abs()) });
    let s = &a + a.transpose();
    let b: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
    let opts = SolveOptions { tol: 1e-12, max_iter: 200 };
    for (m, r) in [
        (&a, gmres(&a, &b, None, &IdentityPreconditioner, opts).unwrap()),
        (&s, minres(&s, &b, None, &IdentityPreconditioner, opts).unwrap()),
    ] {
        let x = m.clone().lu().solve(&DVector::from_vec(b.clone())).unwrap();
        assert!(r.converged);
        assert!((DVector::from_vec(r.x) - x).amax() < 1e-9);
    }
}

proptest! {
    #[test]
    fn toeplitz_matvec_matches_dense(coeffs in prop::collection::vec(-2.0f64..2.0, 1..40)) {
        let n = (coeffs.len() + 1) / 2;
        let coeffs = &coeffs[..2 * n - 1];
        let t = ToeplitzOperator::from_real(coeffs).unwrap();
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).cos()).collect();
        let fast = t.apply_real(&x).unwrap();
        let dense = t.to_dense_real() * DVector::from_vec(x);
        for i in 0..n {
            prop_assert!((fast[i] - dense[i]).abs() < 1e-11);
        }
    }

    #[test]
    fn dst_is_an_involution(x in prop::collection::vec(-5.0f64..5.0, 1..64)) {
        let back = dst1_apply(&dst1_apply(&x).unwrap()).unwrap();
        for (a, b) in back.iter().zip(&x) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn tau_solve_inverts_apply(diag in prop::collection::vec(0.5f64..3.0, 1..48)) {
        let n = diag.len();
        let tau = TauOperator::new(diag).unwrap();
        let b: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64).sin()).collect();
        let r = tau.apply(&tau.solve(&b).unwrap()).unwrap();
        for (a, c) in r.iter().zip(&b) {
            prop_assert!((a - c).abs() < 1e-11);
        }
    }
}
