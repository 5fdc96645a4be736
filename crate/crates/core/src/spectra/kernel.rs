use core::f64::consts::PI;

use crate::specfun::{bessel_lambda, kernel_y};

/// Beyond `λr` of this size squared-Bessel kernels are replaced by their
/// period average.
pub(crate) const AVERAGING_ONSET: f64 = 2000.0;

/// Integration kernels `K(λ)` applied to a spectral measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Kernel {
    /// `Y_n(λr)`.
    Cov { n: u32, r: f64 },
    /// `scale · (J_ν(λr)/(λr)^ν)²`.
    Squared { nu: f64, r: f64, scale: f64 },
    /// `λ^p`.
    Power { p: f64 },
}

impl Kernel {
    pub(crate) fn value(&self, l: f64) -> f64 {
        match *self {
            Kernel::Cov { n, r } => kernel_y(n, l * r),
            Kernel::Squared { nu, r, scale } => {
                let v = bessel_lambda(nu, l * r);
                scale * v * v
            }
            Kernel::Power { p } => {
                if p == 0.0 {
                    1.0
                } else {
                    libm::pow(l, p)
                }
            }
        }
    }

    pub(crate) fn derivative(&self, l: f64) -> f64 {
        match *self {
            Kernel::Cov { n, r } => {
                let z = l * r;
                -r * z / n as f64 * kernel_y(n + 2, z)
            }
            Kernel::Squared { nu, r, scale } => {
                let z = l * r;
                -2.0 * scale * r * z * bessel_lambda(nu, z) * bessel_lambda(nu + 1.0, z)
            }
            Kernel::Power { p } => {
                if p == 0.0 {
                    0.0
                } else {
                    p * libm::pow(l, p - 1.0)
                }
            }
        }
    }

    /// Order and scale of the Bessel zeros bounding oscillation panels.
    pub(crate) fn oscillation(&self) -> Option<(f64, f64)> {
        match *self {
            Kernel::Cov { n, r } if r > 0.0 => Some((0.5 * (n as f64 - 2.0), r)),
            Kernel::Squared { nu, r, .. } if r > 0.0 => Some((nu, r)),
            _ => None,
        }
    }

    /// Zero order for panels of the derivative kernel.
    pub(crate) fn derivative_oscillation(&self) -> Option<(f64, f64)> {
        match *self {
            Kernel::Cov { n, r } if r > 0.0 => Some((0.5 * n as f64, r)),
            Kernel::Squared { nu, r, .. } if r > 0.0 => Some((nu, r)),
            _ => None,
        }
    }

    /// `λ` beyond which [`Kernel::averaged`] replaces the kernel.
    pub(crate) fn averaging_threshold(&self) -> f64 {
        match *self {
            Kernel::Squared { r, .. } if r > 0.0 => AVERAGING_ONSET / r,
            _ => f64::INFINITY,
        }
    }

    /// Period average `scale (1/(πz)) (1 + (4ν²−1)/(8z²)) z^{−2ν}`.
    pub(crate) fn averaged(&self, l: f64) -> f64 {
        match *self {
            Kernel::Squared { nu, r, scale } => {
                let z = l * r;
                let c = (4.0 * nu * nu - 1.0) / 8.0;
                scale / PI * libm::pow(z, -1.0 - 2.0 * nu) * (1.0 + c / (z * z))
            }
            _ => self.value(l),
        }
    }

    pub(crate) fn averaged_derivative(&self, l: f64) -> f64 {
        match *self {
            Kernel::Squared { nu, r, scale } => {
                let z = l * r;
                let c = (4.0 * nu * nu - 1.0) / 8.0;
                let a = 1.0 + 2.0 * nu;
                scale / PI * r * (-a * libm::pow(z, -a - 1.0) - c * (a + 2.0) * libm::pow(z, -a - 3.0))
            }
            _ => self.derivative(l),
        }
    }
}
