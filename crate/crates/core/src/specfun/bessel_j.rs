use alloc::vec::Vec;
use core::f64::consts::{FRAC_2_PI, PI};

use super::gamma::gamma_unchecked;
use crate::error::{ensure_finite, Error, Result};

const SERIES_LIMIT: f64 = 8.0;
const ASYMPTOTIC_FLOOR: f64 = 25.0;

/// Bessel function of the first kind `J_ν(z)` for `ν ≥ −1/2`, `z ≥ 0`.
///
/// Power series below `z = 8`, Hankel's asymptotic expansion once
/// `z ≥ max(25, ν²)`, and Miller's backward recurrence in between.
///
/// ```
/// # use lrd_spectra_core::specfun::bessel_j;
/// let z = 10.0_f64;
/// let closed = (2.0 / (core::f64::consts::PI * z)).sqrt() * z.sin();
/// assert!((bessel_j(0.5, z).unwrap() - closed).abs() < 1e-14);
/// ```
pub fn bessel_j(nu: f64, z: f64) -> Result<f64> {
    check_args("bessel_j", nu, z)?;
    Ok(j(nu, z))
}

/// `J_ν(z) / z^ν`, finite at `z = 0` where it equals `1/(2^ν Γ(ν+1))`.
pub fn bessel_j_over_pow(nu: f64, z: f64) -> Result<f64> {
    check_args("bessel_j_over_pow", nu, z)?;
    Ok(lambda(nu, z))
}

/// The isotropic kernel `Y_n(z)`: `cos z` for `n = 1`, otherwise
/// `2^{(n-2)/2} Γ(n/2) J_{(n-2)/2}(z) z^{(2-n)/2}`, with `Y_n(0) = 1`.
pub fn spherical_bessel_y(n: u32, z: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Dimension(n));
    }
    ensure_finite("spherical_bessel_y", z)?;
    if z < 0.0 {
        return Err(Error::Domain {
            function: "spherical_bessel_y",
            value: z,
            expected: "z >= 0",
        });
    }
    Ok(kernel_y(n, z))
}

fn check_args(function: &'static str, nu: f64, z: f64) -> Result<()> {
    ensure_finite(function, nu)?;
    ensure_finite(function, z)?;
    if nu < -0.5 {
        return Err(Error::Domain {
            function,
            value: nu,
            expected: "nu >= -1/2",
        });
    }
    if z < 0.0 || z.is_infinite() {
        return Err(Error::Domain {
            function,
            value: z,
            expected: "0 <= z < inf",
        });
    }
    Ok(())
}

pub(crate) fn kernel_y(n: u32, z: f64) -> f64 {
    match n {
        1 => libm::cos(z),
        2 => j(0.0, z),
        3 => {
            if z < 1e-4 {
                1.0 - z * z / 6.0
            } else {
                libm::sin(z) / z
            }
        }
        _ => {
            let nu = 0.5 * (n as f64 - 2.0);
            gamma_unchecked(nu + 1.0) * libm::pow(2.0, nu) * lambda(nu, z)
        }
    }
}

/// `J_ν(z)` without argument checks.
pub(crate) fn j(nu: f64, z: f64) -> f64 {
    if z == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    if nu == -0.5 {
        return libm::sqrt(FRAC_2_PI / z) * libm::cos(z);
    }
    if nu == 0.5 {
        return libm::sqrt(FRAC_2_PI / z) * libm::sin(z);
    }
    if z < SERIES_LIMIT {
        libm::pow(z, nu) * series_lambda(nu, z)
    } else if z >= ASYMPTOTIC_FLOOR.max(nu * nu) {
        hankel(nu, z)
    } else {
        miller(nu, z)
    }
}

/// `J_ν(z)/z^ν` without argument checks.
pub(crate) fn lambda(nu: f64, z: f64) -> f64 {
    if z < SERIES_LIMIT {
        series_lambda(nu, z)
    } else {
        j(nu, z) / libm::pow(z, nu)
    }
}

// Σ (−1)^m (z/2)^{2m} / (m! Γ(m+ν+1)) / 2^ν
fn series_lambda(nu: f64, z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0 / (gamma_unchecked(nu + 1.0) * libm::pow(2.0, nu));
    let mut sum = term;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= -q / (m * (m + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || m > 200.0 {
            break;
        }
    }
    sum
}

fn hankel(nu: f64, z: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut t = 1.0;
    let mut k = 1u32;
    loop {
        let odd = (2 * k - 1) as f64;
        let next = t * (mu - odd * odd) / (k as f64 * 8.0 * z);
        if next.abs() > t.abs() && k > 2 {
            break;
        }
        t = next;
        match k % 4 {
            1 => q += t,
            2 => p -= t,
            3 => q -= t,
            _ => p += t,
        }
        if t.abs() < 1e-17 || k > 60 {
            break;
        }
        k += 1;
    }
    let phi = (0.5 * nu + 0.25) * PI;
    let (sz, cz) = (libm::sin(z), libm::cos(z));
    let (sp, cp) = (libm::sin(phi), libm::cos(phi));
    let cos_chi = cz * cp + sz * sp;
    let sin_chi = sz * cp - cz * sp;
    libm::sqrt(FRAC_2_PI / z) * (p * cos_chi - q * sin_chi)
}

// Backward recurrence normalised by (z/2)^ν / Γ(ν+1) = Σ_k d_k J_{ν+2k}(z).
fn miller(nu: f64, z: f64) -> f64 {
    let mut top = libm::ceil(z + 20.0 + 12.0 * libm::cbrt(z)) as usize;
    if top % 2 == 1 {
        top += 1;
    }
    let kmax = top / 2;
    // e_k = Γ(ν+k)/(k! Γ(ν+1)); d_0 = 1, d_k = (ν+2k) e_k
    let mut d = Vec::with_capacity(kmax + 1);
    d.push(1.0);
    let mut e = 1.0;
    for k in 1..=kmax {
        if k > 1 {
            e *= (nu + k as f64 - 1.0) / k as f64;
        }
        d.push((nu + 2.0 * k as f64) * e);
    }
    let mut f_next = 0.0;
    let mut f = 1e-280;
    let mut norm = if top % 2 == 0 { d[kmax] * f } else { 0.0 };
    let mut m = top;
    while m > 0 {
        let f_prev = 2.0 * (nu + m as f64) / z * f - f_next;
        f_next = f;
        f = f_prev;
        m -= 1;
        if m % 2 == 0 {
            norm += d[m / 2] * f;
        }
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
        }
    }
    let lead = libm::exp(nu * libm::log(0.5 * z) - libm::lgamma(nu + 1.0));
    f / norm * lead
}
