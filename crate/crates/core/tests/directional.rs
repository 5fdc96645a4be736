#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;
use std::sync::Arc;

use lrd_spectra_core::asymptotics::{verify_theorem_pair, TheoremId, Verdict};
use lrd_spectra_core::directional::{
    anisotropy_probe, check_theorem11, cov_from_directional, s_tilde_multiplier, zonal_harmonic, DirectionalDensity,
};
use lrd_spectra_core::models::{ModelId, ModelSpec, Params, Quantity};
use lrd_spectra_core::quad::{integrate, Tolerance};
use lrd_spectra_core::Error;
use proptest::prelude::*;

fn model(id: ModelId) -> ModelSpec {
    ModelSpec::build(id, &Params::new()).unwrap()
}

fn thetas() -> Vec<f64> {
    (0..7).map(|i| PI * i as f64 / 6.0).collect()
}

#[test]
fn zonal_harmonics() {
    assert_eq!(zonal_harmonic(0, 1.234).unwrap(), 1.0);
    assert!((zonal_harmonic(2, PI / 2.0).unwrap() + 0.5).abs() < 1e-15);
    assert!((zonal_harmonic(2, 0.0).unwrap() - 1.0).abs() < 1e-15);
    assert!(matches!(zonal_harmonic(1, 0.3), Err(Error::UnsupportedDegree(1))));
    assert!(matches!(zonal_harmonic(4, 0.3), Err(Error::UnsupportedDegree(4))));
}

#[test]
fn zonal_orthogonality() {
    let tol = Tolerance::new(1e-14, 1e-14);
    let y2 = |t: f64| zonal_harmonic(2, t).unwrap();
    let cross = integrate(|t: f64| y2(t) * t.sin(), 0.0, PI, tol).value;
    assert!(cross.abs() < 1e-13);
    // ∫ Y_2² sin θ dθ = 2/5
    let norm = integrate(|t: f64| y2(t) * y2(t) * t.sin(), 0.0, PI, tol).value;
    assert!((norm - 0.4).abs() < 1e-13);
}

#[test]
fn multipliers() {
    let m0 = s_tilde_multiplier(2.0, 3, 0).unwrap();
    let m2 = s_tilde_multiplier(2.0, 3, 2).unwrap();
    assert!((m0.re - PI.powf(-0.5)).abs() < 1e-15 && m0.im == 0.0);
    assert!((m2.re + 0.5 * PI.powf(-0.5)).abs() < 1e-15 && m2.im == 0.0);
    // odd degrees are imaginary
    let m1 = s_tilde_multiplier(2.0, 3, 1).unwrap();
    assert!(m1.re == 0.0 && m1.im < 0.0);
    assert!(s_tilde_multiplier(3.0, 3, 0).is_err());
    assert!(s_tilde_multiplier(0.0, 3, 0).is_err());
    // S = 5 Y0 − 4 Y2 = 7 − 6cos²θ maps onto a multiple of 5 Y0 + 2 Y2 = 4 + 3cos²θ
    for t in thetas() {
        let mapped = 5.0 * m0.re - 4.0 * m2.re * zonal_harmonic(2, t).unwrap();
        let declared = 4.0 + 3.0 * t.cos().powi(2);
        assert!((mapped / declared - PI.powf(-0.5)).abs() < 1e-14);
        assert!((5.0 - 4.0 * zonal_harmonic(2, t).unwrap() - (7.0 - 6.0 * t.cos().powi(2))).abs() < 1e-14);
    }
}

proptest! {
    #[test]
    fn degree_zero_multiplier_is_positive(n in 1u32..=9, frac in 0.01f64..0.99) {
        let alpha = frac * n as f64;
        let m = s_tilde_multiplier(alpha, n, 0).unwrap();
        prop_assert!(m.re > 0.0 && m.im == 0.0);
    }
}

fn check_against_closed(id: ModelId) {
    let m = model(id);
    let d = &m.directional().unwrap().density;
    for i in 0..12 {
        let r = 0.1 * 200f64.powf(i as f64 / 11.0);
        for t in thetas() {
            let numeric = cov_from_directional(d, r, t).unwrap();
            let closed = (m.directional().unwrap().cov)(r, t);
            let scale = closed.abs().max(1.0);
            assert!(
                (numeric - closed).abs() / scale < 1e-4,
                "{id} r = {r}, theta = {t}: numeric {numeric}, closed {closed}"
            );
        }
    }
}

#[test]
fn exp_model_matches_printed_covariance() {
    check_against_closed(ModelId::DirectionalExp);
}

#[test]
fn truncated_model_matches_printed_covariance() {
    check_against_closed(ModelId::DirectionalTruncated);
}

#[test]
fn printed_variances() {
    let e = model(ModelId::DirectionalExp);
    let t = model(ModelId::DirectionalTruncated);
    for th in thetas() {
        let ve = e.eval_polar(Quantity::Covariance, 0.0, th).unwrap();
        let vt = t.eval_polar(Quantity::Covariance, 0.0, th).unwrap();
        assert!((ve - 20.0 * PI).abs() < 1e-12);
        assert!((vt - 10.0 * (2.0 * PI).sqrt()).abs() < 1e-12);
        let ne = cov_from_directional(&e.directional().unwrap().density, 0.0, th).unwrap();
        let nt = cov_from_directional(&t.directional().unwrap().density, 0.0, th).unwrap();
        assert!((ne - 20.0 * PI).abs() < 1e-8 && (nt - vt).abs() < 1e-8);
    }
}

#[test]
fn covariance_is_even_in_theta() {
    for id in [ModelId::DirectionalExp, ModelId::DirectionalTruncated] {
        let m = model(id);
        for r in [0.05, 0.7, 3.0, 40.0] {
            for t in [0.1, 0.6, 1.2] {
                let a = m.eval_polar(Quantity::Covariance, r, t).unwrap();
                let b = m.eval_polar(Quantity::Covariance, r, PI - t).unwrap();
                assert!((a - b).abs() <= 1e-10, "{id} r = {r}");
            }
        }
    }
}

#[test]
fn isotropic_density_reduces_to_the_radial_transform() {
    // R = e^{−ρ}/(4πρ) is the isotropic density of exp_gamma (n = 3, a = 1)
    let radial = Arc::new(|rho: f64| (-rho).exp() / (4.0 * PI * rho));
    let d = DirectionalDensity::new(vec![(0, 1.0)], radial, None).unwrap();
    let iso = model(ModelId::ExpGamma);
    for r in [0.0, 0.3, 1.0, 4.0, 15.0] {
        let b = cov_from_directional(&d, r, 0.7).unwrap();
        let spectral = iso.eval_transform(Quantity::Covariance, r).unwrap();
        assert!((b / (4.0 * PI) - spectral).abs() < 1e-8, "r = {r}");
    }
}

#[test]
fn unsupported_degrees_are_rejected() {
    let radial = Arc::new(|rho: f64| (-rho).exp());
    assert!(matches!(
        DirectionalDensity::new(vec![(0, 1.0), (4, 1.0)], radial, None),
        Err(Error::UnsupportedDegree(4))
    ));
}

#[test]
fn theorem11_exp_model() {
    let m = model(ModelId::DirectionalExp);
    let rep = check_theorem11(&m, 0.01).unwrap();
    assert_eq!(rep.verdict, Verdict::Confirmed, "{}", rep.note);
    // r²B(r, θ) → 4π(7 − 6cos²θ) and ρ f(ρ, θ) → (4 + 3cos²θ)/(4π)
    let top = *m.expected.scales.last().unwrap();
    for t in [0.0, PI / 4.0, PI / 2.0] {
        let a = top * top * m.eval_polar(Quantity::Covariance, top, t).unwrap();
        let c2 = t.cos().powi(2);
        assert!((a / (4.0 * PI * (7.0 - 6.0 * c2)) - 1.0).abs() < 1e-3);
        let rho = 1e-6;
        let b = rho * m.eval_polar(Quantity::Density, rho, t).unwrap();
        assert!((b / ((4.0 + 3.0 * c2) / (4.0 * PI)) - 1.0).abs() < 1e-5);
    }
}

#[test]
fn theorem11_truncated_model() {
    let m = model(ModelId::DirectionalTruncated);
    let rep = verify_theorem_pair(&m, TheoremId::T11).unwrap();
    assert_eq!(rep.verdict, Verdict::FailedAsPredicted, "{}", rep.note);
    assert!(rep.note.contains("side a settles: false") && rep.note.contains("side b settles: true"));
}

#[test]
fn theorem11_needs_a_directional_model() {
    let m = model(ModelId::CauchyBessel);
    assert!(matches!(check_theorem11(&m, 0.01), Err(Error::NotApplicable { .. })));
}

fn probe_radii() -> Vec<f64> {
    (0..41).map(|i| 0.5 * 1e6f64.powf(i as f64 / 40.0)).collect()
}

#[test]
fn anisotropy_of_a_stretched_isotropic_covariance() {
    // B0(‖Ax‖) with A = diag(1, 1, 2): ‖Ax‖ = r √(sin²θ + 4cos²θ)
    let b = |r: f64, t: f64| {
        let q = (t.sin().powi(2) + 4.0 * t.cos().powi(2)).sqrt();
        1.0 / (1.0 + (r * q).powi(2))
    };
    let ts = [PI / 2.0, 0.0, PI / 4.0, PI / 3.0];
    let rep = anisotropy_probe(&b, &probe_radii(), &ts, 1e-3).unwrap();
    assert!(rep.anisotropic && rep.radially_homogeneous, "{rep:?}");
    // s(θ) = q(θ)/q(π/2)
    for (s, t) in rep.scales.iter().zip(ts) {
        let q = (t.sin().powi(2) + 4.0 * t.cos().powi(2)).sqrt();
        assert!((s - q).abs() < 1e-4, "theta = {t}: {s} vs {q}");
    }
}

#[test]
fn isotropic_covariance_passes_with_unit_scale() {
    let b = |r: f64, _t: f64| (1.0 + r * r).powf(-1.5);
    let rep = anisotropy_probe(&b, &probe_radii(), &thetas(), 1e-6).unwrap();
    assert!(rep.anisotropic && rep.radially_homogeneous);
    assert!(rep.scales.iter().all(|s| (s - 1.0).abs() < 1e-6));
    assert!(rep.homogeneity_deviation < 1e-12);
}

#[test]
fn truncated_model_is_neither() {
    let m = model(ModelId::DirectionalTruncated);
    let b = |r: f64, t: f64| m.eval_polar(Quantity::Covariance, r, t).unwrap();
    let rep = anisotropy_probe(&b, &probe_radii(), &thetas(), 1e-2).unwrap();
    assert!(!rep.radially_homogeneous && !rep.anisotropic, "{rep:?}");
}

#[test]
fn exp_model_is_directional_but_not_anisotropic() {
    let m = model(ModelId::DirectionalExp);
    let b = |r: f64, t: f64| m.eval_polar(Quantity::Covariance, r, t).unwrap();
    let rep = anisotropy_probe(&b, &probe_radii(), &thetas(), 1e-2).unwrap();
    assert!(rep.radially_homogeneous && !rep.anisotropic, "{rep:?}");
}
