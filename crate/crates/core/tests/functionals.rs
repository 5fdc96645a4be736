#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;
use std::sync::Arc;

use lrd_spectra_core::functionals::{
    var_ball, var_ball_bruteforce, var_ball_normalized, var_sphere, var_sphere_normalized,
};
use lrd_spectra_core::spectra::{ball_volume, sphere_area, Atom, CovarianceModel, Piece, PieceShape, SpectralMeasure};
use lrd_spectra_core::specfun::bessel_j;
use lrd_spectra_core::Error;
use proptest::prelude::*;

// mpmath, 25 digits: (r, b_3, l_3) for G′ = λe^{−λ}, n = 3.
const EXAMPLE1: [(f64, f64, f64); 4] = [
    (0.5, 0.2154798959455542188884745, 6.841088463857116544847479),
    (1.0, 9.037159020345161948002178, 63.53806201535866731436152),
    (2.0, 275.3917886686653175522967, 447.4031182355572711732174),
    (10.0, 325913.9677695031052966069, 23663.21123316190757094967),
];

fn example1() -> SpectralMeasure {
    SpectralMeasure::from_pieces(
        3,
        vec![Piece {
            lo: 0.0,
            hi: f64::INFINITY,
            shape: PieceShape::Density(Arc::new(|l: f64| l * (-l).exp())),
        }],
    )
    .unwrap()
}

fn ex4() -> SpectralMeasure {
    SpectralMeasure::from_distribution(3, Arc::new(|l: f64| l.min(1.0).powi(2)), 1.0, Some(1.0), vec![]).unwrap()
}

fn ex4_b3(r: f64) -> f64 {
    4.0 * PI * PI * (2.0 * r.powi(4) - 2.0 * r * r + 2.0 * (2.0 * r).sin() * r - 1.0 + (2.0 * r).cos())
}

fn ex5() -> SpectralMeasure {
    let c = 4.0 * PI / (2.0 * PI).powf(1.5);
    let full = move |l: f64| c * ((-50.0 * l).exp() + (2.0 / l).sin().powi(2)) / l.sqrt();
    SpectralMeasure::from_pieces(
        3,
        vec![
            Piece {
                lo: 0.0,
                hi: 1.0,
                shape: PieceShape::ReciprocalOscillation {
                    base: Arc::new(move |l: f64| c * ((-50.0 * l).exp() + 0.5) / l.sqrt()),
                    amplitude: Arc::new(move |l: f64| -0.5 * c / l.sqrt()),
                    frequency: 4.0,
                },
            },
            Piece {
                lo: 1.0,
                hi: f64::INFINITY,
                shape: PieceShape::Density(Arc::new(full)),
            },
        ],
    )
    .unwrap()
}

fn ex5_cov(r: f64) -> f64 {
    let s = r.sqrt();
    (16.0 * ((2500.0 + r * r).sqrt() - 50.0).sqrt() + 8.0 * s + (-4.0 * s).exp() - (4.0 * s).sin() - (4.0 * s).cos())
        / (8.0 * r)
}

fn ex5_l3(r: f64) -> f64 {
    let q = (2.0 * r).sqrt();
    let w = (r * r + 625.0).sqrt();
    PI * PI * r * r / 24.0
        * (128006.0 - (3.0 + 12.0 * q) * (4.0 * q).sin() + 256.0 * 2f64.sqrt() * r.powf(1.5)
            - 12.0 * q * (-4.0 * q).exp()
            + (12.0 * q - 3.0) * (4.0 * q).cos()
            - 3.0 * (-4.0 * q).exp()
            + 512.0 * (50.0 + 2.0 * w).sqrt() * (w - 50.0))
}

#[test]
fn ex4_ball_variance_closed_form() {
    let m = ex4();
    for &r in &[0.5, 1.0, 2.0, 7.0, 40.0] {
        let v = var_ball(&m, r).unwrap();
        assert!((v / ex4_b3(r) - 1.0).abs() < 1e-7, "r={r}: {v} vs {}", ex4_b3(r));
    }
}

#[test]
fn ex4_ball_variance_growth() {
    let v = var_ball_normalized(&ex4(), 1e3).unwrap() * 1e6;
    assert!((v / (8.0 * PI * PI) - 1.0).abs() < 0.01);
}

#[test]
fn example1_against_quadrature_oracle() {
    let m = example1();
    for &(r, b, l) in &EXAMPLE1 {
        assert!((var_ball(&m, r).unwrap() / b - 1.0).abs() < 1e-7, "b r={r}");
        assert!((var_sphere(&m, r).unwrap() / l - 1.0).abs() < 1e-7, "l r={r}");
    }
}

#[test]
fn small_radius_limits() {
    let m = example1();
    let r = 1e-4;
    let b = var_ball_normalized(&m, r).unwrap();
    assert!((b / ball_volume(3).powi(2) - 1.0).abs() < 1e-6);
    let l = var_sphere_normalized(&m, r).unwrap();
    assert!((l / sphere_area(3).powi(2) - 1.0).abs() < 1e-6);
}

#[test]
fn single_atom_sphere_variance() {
    let (l0, mass) = (1.3, 0.7);
    let m = SpectralMeasure::from_atoms(4, vec![Atom { location: l0, mass }]).unwrap();
    let r = 2.1f64;
    let z = l0 * r;
    let exact = (2.0 * PI).powi(4) * r.powi(6) * bessel_j(1.0, z).unwrap().powi(2) * z.powi(-2) * mass;
    assert!((var_sphere(&m, r).unwrap() / exact - 1.0).abs() < 1e-12);
}

#[test]
fn ex5_covariance_and_sphere_variance() {
    let m = ex5();
    // B(0) = (16/10 + 16)/8 from the expansion of the closed form
    assert!((m.total_mass() - 2.2).abs() < 1e-8, "{}", m.total_mass());
    for &r in &[0.5, 2.0, 30.0] {
        let b = lrd_spectra_core::spectra::cov_from_spectrum(&m, r).unwrap();
        assert!((b - ex5_cov(r)).abs() < 1e-7, "r={r}: {b} vs {}", ex5_cov(r));
    }
    for &r in &[2.0, 10.0, 1e3] {
        let l = var_sphere(&m, r).unwrap();
        assert!((l / ex5_l3(r) - 1.0).abs() < 1e-7, "r={r}: {l} vs {}", ex5_l3(r));
    }
}

#[test]
fn sphere_variance_needs_two_dimensions() {
    let m = SpectralMeasure::from_atoms(1, vec![Atom { location: 1.0, mass: 1.0 }]).unwrap();
    assert!(matches!(var_sphere(&m, 1.0), Err(Error::Dimension(1))));
    assert!(var_ball(&m, 0.0).is_err());
}

#[test]
fn monte_carlo_constant_covariance() {
    let c = CovarianceModel::new(3, Arc::new(|_| 1.0)).unwrap();
    let est = var_ball_bruteforce(&c, 1.3, 10_000, 7).unwrap();
    let vol = ball_volume(3) * 1.3f64.powi(3);
    assert!((est.estimate - vol * vol).abs() < 1e-9 * vol * vol);
    assert!(est.std_error < 1e-9);
    assert!(var_ball_bruteforce(&c, 1.0, 100, 7).is_err());
}

#[test]
fn monte_carlo_agrees_with_spectral_side() {
    let c = CovarianceModel::new(3, Arc::new(|r: f64| 1.0 / (1.0 + r * r))).unwrap();
    for &(r, b, _) in &EXAMPLE1[..3] {
        let est = var_ball_bruteforce(&c, r, 200_000, 11).unwrap();
        assert!(est.agrees_with(b, 3.0), "r={r}: {est:?} vs {b}");
    }
    let ex4c = CovarianceModel::new(
        3,
        Arc::new(|r: f64| if r < 1e-4 { 1.0 - r * r / 12.0 } else { 2.0 * (1.0 - r.cos()) / (r * r) }),
    )
    .unwrap();
    let est = var_ball_bruteforce(&ex4c, 1.0, 1_000_000, 3).unwrap();
    assert!(est.agrees_with(ex4_b3(1.0), 3.0), "{est:?} vs {}", ex4_b3(1.0));
}

#[test]
fn monte_carlo_is_reproducible() {
    let c = CovarianceModel::new(2, Arc::new(|r: f64| (-r).exp())).unwrap();
    let a = var_ball_bruteforce(&c, 1.0, 10_000, 42).unwrap();
    let b = var_ball_bruteforce(&c, 1.0, 10_000, 42).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn variances_nonnegative_and_bounded(r in 0.01f64..200.0, a in 0.3f64..3.0) {
        let m = SpectralMeasure::from_distribution(3, Arc::new(move |l: f64| l.min(a).powi(2)), a * a, Some(a), vec![]).unwrap();
        let b = var_ball_normalized(&m, r).unwrap();
        let l = var_sphere_normalized(&m, r).unwrap();
        prop_assert!(b >= 0.0 && l >= 0.0);
        prop_assert!(b <= ball_volume(3).powi(2) * a * a * (1.0 + 1e-9));
        prop_assert!(l <= sphere_area(3).powi(2) * a * a * (1.0 + 1e-9));
    }
}
