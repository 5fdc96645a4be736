use core::f64::consts::PI;

use super::bessel_j::j;
use crate::error::{ensure_finite, Error, Result};

/// `k`-th positive zero of `J_ν` (`k ≥ 1`, `ν ≥ −1/2`).
///
/// ```
/// # use lrd_spectra_core::specfun::bessel_j_zero;
/// assert!((bessel_j_zero(0.0, 1).unwrap() - 2.404825557695773).abs() < 1e-12);
/// ```
pub fn bessel_j_zero(nu: f64, k: u32) -> Result<f64> {
    ensure_finite("bessel_j_zero", nu)?;
    if k == 0 {
        return Err(Error::Domain {
            function: "bessel_j_zero",
            value: 0.0,
            expected: "k >= 1",
        });
    }
    if nu < -0.5 {
        return Err(Error::Domain {
            function: "bessel_j_zero",
            value: nu,
            expected: "nu >= -1/2",
        });
    }
    Ok(zero(nu, k))
}

pub(crate) fn zero(nu: f64, k: u32) -> f64 {
    if nu == -0.5 {
        return (k as f64 - 0.5) * PI;
    }
    if nu == 0.5 {
        return k as f64 * PI;
    }
    let guess = if k == 1 && nu >= 1.0 {
        let c = libm::cbrt(nu);
        nu + 1.855_757_1 * c + 1.033_150 / c - 0.003_97 / nu - 0.0908 / (c * c * nu)
            + 0.043 / (c * nu * nu)
    } else {
        mcmahon(nu, k)
    };
    newton(nu, guess)
}

fn mcmahon(nu: f64, k: u32) -> f64 {
    let mu = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let e = 8.0 * beta;
    let e3 = e * e * e;
    beta - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e3)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e3 * e * e)
}

fn newton(nu: f64, mut z: f64) -> f64 {
    for _ in 0..60 {
        let f = j(nu, z);
        let df = nu / z * f - j(nu + 1.0, z);
        if df == 0.0 {
            break;
        }
        let step = f / df;
        z -= step;
        if step.abs() <= 1e-15 * z.abs() {
            break;
        }
    }
    z
}

/// Iterator over the increasing positive zeros of `J_ν`.
#[derive(Debug, Clone)]
pub struct BesselZeros {
    nu: f64,
    k: u32,
    last: f64,
}

impl BesselZeros {
    /// Zeros of `J_ν`, starting from the first.
    pub fn new(nu: f64) -> Self {
        BesselZeros {
            nu,
            k: 0,
            last: 0.0,
        }
    }

    /// Zeros of `J_ν` from a few before `z` onwards (callers skip the
    /// ones below `z`).
    pub fn near(nu: f64, z: f64) -> Self {
        let k = libm::floor(z / PI - 0.5 * nu + 0.25) - 3.0;
        if k < 1.0 {
            return Self::new(nu);
        }
        let k = k as u32;
        BesselZeros {
            nu,
            k,
            last: zero(nu, k) - 0.5,
        }
    }
}

impl Iterator for BesselZeros {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        self.k += 1;
        let mut z = zero(self.nu, self.k);
        // Newton may land on a neighbouring zero when the guess is poor
        if !(z > self.last + 0.5) || !z.is_finite() {
            z = self.last + PI;
        }
        self.last = z;
        Some(z)
    }
}
