//! Numerical integration: adaptive Gauss–Kronrod, Wynn's epsilon algorithm,
//! and panel integration of oscillatory integrands between Bessel zeros.

mod extrapolation;
mod gauss_kronrod;
mod panels;

pub use extrapolation::EpsilonTable;
pub use gauss_kronrod::{integrate, integrate_points, integrate_to_infinity};
pub use panels::{oscillatory_integral, PanelOptions, Tail};

pub(crate) use panels::integrate_panels;

/// Absolute/relative accuracy request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    /// Error target for a result of size `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::new(1e-10, 1e-10)
    }
}

/// Result of a quadrature: value, error estimate and convergence flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

impl Integral {
    pub(crate) fn exact(value: f64) -> Self {
        Integral {
            value,
            error: 0.0,
            converged: true,
        }
    }

    /// Converts a non-converged result into [`crate::Error::NonConvergence`].
    pub fn require(self) -> crate::Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(crate::Error::NonConvergence {
                value: self.value,
                error: self.error,
            })
        }
    }
}

impl core::ops::Add for Integral {
    type Output = Integral;

    fn add(self, rhs: Integral) -> Integral {
        Integral {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
            converged: self.converged && rhs.converged,
        }
    }
}

impl core::ops::Mul<f64> for Integral {
    type Output = Integral;

    fn mul(self, c: f64) -> Integral {
        Integral {
            value: self.value * c,
            error: self.error * c.abs(),
            converged: self.converged,
        }
    }
}
