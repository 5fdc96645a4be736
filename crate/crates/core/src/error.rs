//! Error type shared by every module.

use alloc::string::String;

/// Failure modes of the numeric routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{function}: argument {value} outside the domain {expected}")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("{function}: pole at {value}")]
    Pole { function: &'static str, value: f64 },
    #[error("{function}: result overflows at {value}")]
    Overflow { function: &'static str, value: f64 },
    #[error("{function}: diverges at {value}")]
    Divergence { function: &'static str, value: f64 },
    #[error("{function}: singular parameter {value}")]
    SingularParameter { function: &'static str, value: f64 },
    #[error("quadrature did not converge: best value {value}, error estimate {error}")]
    NonConvergence { value: f64, error: f64 },
    #[error("integrand tail does not contract (panel magnitude ratio {ratio})")]
    TailDivergence { ratio: f64 },
    #[error("covariance fails the integrability check (envelope exponent {exponent})")]
    IntegrabilityViolation { exponent: f64 },
    #[error("{value} must be positive")]
    NonPositive { value: f64 },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("invalid spectral measure: {0}")]
    InvalidMeasure(&'static str),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("quantity `{quantity}` is not available for model `{model}`")]
    Unavailable {
        quantity: &'static str,
        model: &'static str,
    },
    #[error("theorem `{theorem}` does not apply to model `{model}`: {reason}")]
    NotApplicable {
        theorem: &'static str,
        model: &'static str,
        reason: &'static str,
    },
    #[error("unsupported harmonic degree {0}")]
    UnsupportedDegree(u32),
    #[error("unsupported dimension {0}")]
    Dimension(u32),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn ensure_finite(function: &'static str, x: f64) -> Result<()> {
    if x.is_nan() {
        Err(Error::Domain {
            function,
            value: x,
            expected: "(not NaN)",
        })
    } else {
        Ok(())
    }
}
