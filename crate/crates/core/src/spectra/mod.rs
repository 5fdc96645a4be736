//! Spectral measures of isotropic fields and the covariance ↔ spectrum
//! transform pair.
//!
//! A [`SpectralMeasure`] holds the radial spectral distribution `G` in one of
//! four representations. [`cov_from_spectrum`] evaluates
//! `B(r) = ∫ Y_n(λr) dG(λ)`; [`spectrum_from_cov`] and [`density_from_cov`]
//! invert a [`CovarianceModel`] back to `G(λ)` and the isotropic density
//! `g(λ)`.

mod integrate;
mod kernel;
mod measure;
mod transforms;

pub use measure::{Atom, Piece, PieceShape, Representation, SpectralMeasure};
pub use transforms::{
    cov_from_spectrum, cov_from_spectrum_with, density_from_cov, density_from_cov_with,
    spectrum_from_cov, spectrum_from_cov_with, CovarianceModel, TransformOptions,
};

pub(crate) use kernel::Kernel;

use crate::specfun::gamma_unchecked;

/// Surface area of the unit sphere in `ℝⁿ`, `2π^{n/2}/Γ(n/2)`.
pub fn sphere_area(n: u32) -> f64 {
    let h = 0.5 * n as f64;
    2.0 * libm::pow(core::f64::consts::PI, h) / gamma_unchecked(h)
}

/// Volume of the unit ball in `ℝⁿ`, `π^{n/2}/Γ(n/2 + 1)`.
pub fn ball_volume(n: u32) -> f64 {
    let h = 0.5 * n as f64;
    libm::pow(core::f64::consts::PI, h) / gamma_unchecked(h + 1.0)
}
