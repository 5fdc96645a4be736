//! Spectral theory of long-range dependent homogeneous isotropic random fields.
//!
//! The crate evaluates the covariance/spectrum transform pair of an isotropic
//! field in `n` dimensions, the variances of ball- and sphere-averaged
//! functionals, the Abelian/Tauberian constants linking power-law decay of a
//! covariance at infinity to the spectral singularity at zero, and numeric
//! verifiers for those asymptotic equivalences.
//!
//! Everything is `no_std` with `alloc`. Special functions, quadrature and the
//! regular-variation estimators are implemented here; the companion
//! `lrd-spectra` crate adds the command-line front end and file formats.
//!
//! ```
//! use lrd_spectra_core::models::{ModelId, ModelSpec, Params, Quantity};
//!
//! let model = ModelSpec::build(ModelId::ExpGamma, &Params::new()).unwrap();
//! let b = model.eval(Quantity::Covariance, 1.0).unwrap();
//! assert!((b - 0.5).abs() < 1e-12);
//! ```
#![no_std]
#![warn(missing_debug_implementations)]
// coefficient tables carry their published digits; `!(x > 0.0)` rejects NaN on purpose
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod asymptotics;
pub mod directional;
pub mod error;
pub mod functionals;
pub mod models;
pub mod quad;
pub mod specfun;
pub mod spectra;

pub use error::{Error, Result};

use alloc::sync::Arc;

/// Shared real-valued callable of one variable.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Shared real-valued callable of two variables, `(r, θ)` for directional models.
pub type PolarFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
