//! Constants of the Abelian/Tauberian theorems.

use core::f64::consts::PI;

use crate::error::{ensure_finite, Error, Result};
use crate::quad::{integrate_panels, PanelOptions, Tail, Tolerance};
use crate::specfun::{bessel_j_unchecked, gamma, gamma_unchecked};

fn check_alpha(function: &'static str, n: u32, alpha: f64, upper: f64, expected: &'static str) -> Result<()> {
    ensure_finite(function, alpha)?;
    if n == 0 {
        return Err(Error::Dimension(n));
    }
    if alpha > 0.0 && alpha < upper {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: alpha,
            expected,
        })
    }
}

/// `c₁(n, α) = 2^α Γ(α/2 + 1) Γ(n/2) / Γ((n − α)/2)`, `0 < α < n`.
///
/// ```
/// # use lrd_spectra_core::asymptotics::c1;
/// assert!((c1(9, 2.0).unwrap() - 14.0).abs() < 1e-12);
/// ```
pub fn c1(n: u32, alpha: f64) -> Result<f64> {
    check_alpha("c1", n, alpha, n as f64, "0 < alpha < n")?;
    let h = 0.5 * n as f64;
    Ok(libm::pow(2.0, alpha) * gamma_unchecked(0.5 * alpha + 1.0) * gamma_unchecked(h) / gamma_unchecked(h - 0.5 * alpha))
}

/// `c₂(n, α) = 2^α π^{n/2} Γ(α/2) / Γ((n − α)/2)`, `0 < α < n`.
pub fn c2(n: u32, alpha: f64) -> Result<f64> {
    check_alpha("c2", n, alpha, n as f64, "0 < alpha < n")?;
    let h = 0.5 * n as f64;
    Ok(libm::pow(2.0, alpha) * libm::pow(PI, h) * gamma_unchecked(0.5 * alpha) / gamma_unchecked(h - 0.5 * alpha))
}

/// `c₃(n, α) = α πⁿ 2^{α+1} Γ(n − α − 1) Γ(α/2) / (Γ²((n − α)/2) Γ(n − 1 − α/2))`,
/// `0 < α < n − 1`, `n ≥ 2`.
pub fn c3(n: u32, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Dimension(n));
    }
    check_alpha("c3", n, alpha, n as f64 - 1.0, "0 < alpha < n - 1")?;
    let nf = n as f64;
    let d = gamma_unchecked(0.5 * (nf - alpha));
    Ok(alpha * libm::pow(PI, nf) * libm::pow(2.0, alpha + 1.0) * gamma_unchecked(nf - alpha - 1.0)
        * gamma_unchecked(0.5 * alpha)
        / (d * d * gamma_unchecked(nf - 1.0 - 0.5 * alpha)))
}

/// `c₄(n, α) = α πⁿ 2^α Γ(n − α − 1) Γ(α/2) / (Γ²((n − α + 2)/2) Γ((2n − α + 2)/2))`
/// exactly as stated for the ball theorem.
///
/// `Γ(n − α − 1)` has a pole at `α = n − 1`, reported as
/// [`Error::SingularParameter`]; for `α > n − 1` the factor is negative.
/// The constant realized by `b_n` is [`ball_constant`].
pub fn c4(n: u32, alpha: f64) -> Result<f64> {
    check_alpha("c4", n, alpha, n as f64, "0 < alpha < n")?;
    let nf = n as f64;
    let g = match gamma(nf - alpha - 1.0) {
        Ok(g) => g,
        Err(Error::Pole { .. }) => {
            return Err(Error::SingularParameter {
                function: "c4",
                value: alpha,
            })
        }
        Err(e) => return Err(e),
    };
    let d = gamma_unchecked(0.5 * (nf - alpha + 2.0));
    Ok(alpha * libm::pow(PI, nf) * libm::pow(2.0, alpha) * g * gamma_unchecked(0.5 * alpha)
        / (d * d * gamma_unchecked(0.5 * (2.0 * nf - alpha + 2.0))))
}

/// `α (2π)ⁿ ∫_0^∞ J²_{n/2}(μ) μ^{α−n−1} dμ` by quadrature: the constant `c`
/// with `b_n(r)/r^{2n−α} ∼ L(r)` whenever `G(λ) ∼ λ^α L(1/λ)/c`.
pub fn ball_constant(n: u32, alpha: f64) -> Result<f64> {
    check_alpha("ball_constant", n, alpha, n as f64, "0 < alpha < n")?;
    Ok(alpha * libm::pow(2.0 * PI, n as f64) * squared_bessel_moment(0.5 * n as f64, alpha - n as f64 - 1.0)?)
}

/// `α (2π)ⁿ ∫_0^∞ J²_{(n−2)/2}(μ) μ^{α−n+1} dμ`, the sphere analogue of
/// [`ball_constant`]; equals [`c3`].
pub fn sphere_constant(n: u32, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Dimension(n));
    }
    check_alpha("sphere_constant", n, alpha, n as f64 - 1.0, "0 < alpha < n - 1")?;
    Ok(alpha * libm::pow(2.0 * PI, n as f64) * squared_bessel_moment(0.5 * (n as f64 - 2.0), alpha - n as f64 + 1.0)?)
}

/// `∫_0^∞ J_ν²(μ) μ^p dμ` for `−2ν − 1 < p < 0`.
pub(crate) fn squared_bessel_moment(nu: f64, p: f64) -> Result<f64> {
    let f = |mu: f64| {
        let j = bessel_j_unchecked(nu, mu);
        j * j * libm::pow(mu, p)
    };
    // beyond `tail_start` subtract the period average of J_ν²,
    // (1 + c/μ²)/(πμ), and add its integral in closed form
    let tail_start = 200.0 + 4.0 * nu * nu;
    let c = (4.0 * nu * nu - 1.0) / 8.0;
    let tol = Tolerance::new(1e-14, 1e-12);
    let head = crate::quad::integrate_points(f, &[0.0, 1.0, tail_start], tol);
    let g = move |mu: f64| f(mu) - libm::pow(mu, p - 1.0) * (1.0 + c / (mu * mu)) / PI;
    // zeros of sin(2μ − νπ)
    let m0 = libm::ceil((2.0 * tail_start - nu * PI) / PI);
    let mut edges = (0..).map(move |k: u32| 0.5 * PI * (nu + m0 + k as f64));
    let opts = PanelOptions {
        tol,
        max_panels: 4000,
        min_panels: 6,
        detect_divergence: false,
    };
    let osc = integrate_panels(&g, tail_start, None, &mut edges, &[], Tail::Extrapolate, opts)?;
    let smooth = -libm::pow(tail_start, p) / (PI * p) - c * libm::pow(tail_start, p - 2.0) / (PI * (p - 2.0));
    let total = head + osc;
    if !total.converged {
        return Err(Error::NonConvergence {
            value: total.value + smooth,
            error: total.error,
        });
    }
    Ok(total.value + smooth)
}

/// Constant of the `0 < γ < 2` case of Bingham's theorem:
/// `2^γ Γ((n + γ)/2) / (Γ(n/2) Γ(1 − γ/2))`.
pub fn bingham_constant(n: u32, gamma_exp: f64) -> Result<f64> {
    check_alpha("bingham_constant", n.max(1), gamma_exp, 2.0, "0 < gamma < 2")?;
    if n == 0 {
        return Err(Error::Dimension(n));
    }
    let h = 0.5 * n as f64;
    Ok(libm::pow(2.0, gamma_exp) * gamma_unchecked(h + 0.5 * gamma_exp)
        / (gamma_unchecked(h) * gamma_unchecked(1.0 - 0.5 * gamma_exp)))
}
