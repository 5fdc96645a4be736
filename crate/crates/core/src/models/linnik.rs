use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{integrate_points, integrate_to_infinity, Tolerance};
use crate::specfun::{bessel_k_unchecked, gamma_unchecked, sici};

/// Isotropic density of `B(r) = (1 + r^κ)^{−ν}`, `0 < κ < 2`, by quadrature of
///
/// ```text
/// g(λ) = λ^{1−n/2} / (2^{n/2−1} π^{n/2+1})
///        ∫_0^∞ K_{n/2−1}(λu) sin(ν arg w) |w|^{−ν} u^{n/2} du,   w = 1 + u^κ e^{iπκ/2}.
/// ```
pub fn linnik_density_integral(n: u32, kappa: f64, nu: f64, lambda: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Dimension(n));
    }
    if !(kappa > 0.0 && kappa < 2.0) || !(nu > 0.0) {
        return Err(Error::Domain {
            function: "linnik_density_integral",
            value: kappa,
            expected: "0 < kappa < 2, nu > 0",
        });
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::NonPositive { value: lambda });
    }
    let h = 0.5 * n as f64;
    let (s, c) = (libm::sin(0.5 * PI * kappa), libm::cos(0.5 * PI * kappa));
    let f = |u: f64| {
        if u == 0.0 {
            return 0.0;
        }
        let p = libm::pow(u, kappa);
        let arg = libm::atan2(p * s, 1.0 + p * c);
        let modulus_sq = 1.0 + 2.0 * p * c + p * p;
        bessel_k_unchecked(h - 1.0, lambda * u) * libm::sin(nu * arg) * libm::pow(modulus_sq, -0.5 * nu) * libm::pow(u, h)
    };
    let tol = Tolerance::new(0.0, 1e-12);
    // K decays on the scale 1/λ; |w| changes near u = 1
    let s0 = 1.0 / lambda;
    let mut pts = [0.0, 0.1 * s0.min(1.0), s0.min(1.0), s0.max(1.0), 10.0 * s0.max(1.0)];
    pts.sort_by(|a, b| a.total_cmp(b));
    let head = integrate_points(f, &pts, tol);
    let tail = integrate_to_infinity(f, pts[4], tol);
    let total = head + tail;
    let pref = libm::pow(lambda, 1.0 - h) / (libm::pow(2.0, h - 1.0) * libm::pow(PI, h + 1.0));
    (total * pref).require()
}

/// The closed form of the `n = 3, κ = 1, ν = 2` density,
///
/// ```text
/// g(λ) = [sin λ (2Ci λ + 2λ Si λ − λπ) + cos λ (π − 2Si λ + 2λ Ci λ)] / (4λπ²).
/// ```
pub fn linnik_density_closed(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::NonPositive { value: lambda });
    }
    let (si, ci) = sici(lambda);
    let (s, c) = (libm::sin(lambda), libm::cos(lambda));
    Ok((s * (2.0 * ci + 2.0 * lambda * si - lambda * PI) + c * (PI - 2.0 * si + 2.0 * lambda * ci)) / (4.0 * lambda * PI * PI))
}

/// Cauchy density `K_{(n−κ)/2}(λ) λ^{(κ−n)/2} / (π^{n/2} 2^{(n+κ−2)/2} Γ(κ/2))`.
pub(crate) fn cauchy_density(n: u32, kappa: f64, lambda: f64) -> f64 {
    let h = 0.5 * n as f64;
    let d = 0.5 * (n as f64 - kappa);
    bessel_k_unchecked(d, lambda) * libm::pow(lambda, -d)
        / (libm::pow(PI, h) * libm::pow(2.0, 0.5 * (n as f64 + kappa - 2.0)) * gamma_unchecked(0.5 * kappa))
}
