//! Special functions: gamma, incomplete gamma, Bessel `J_ν` and `K_ν`,
//! the isotropic kernel `Y_n`, sine/cosine integrals and Bessel zeros.

mod bessel_j;
mod bessel_k;
mod gamma;
mod incomplete_gamma;
mod sici;
mod zeros;

pub use bessel_j::{bessel_j, bessel_j_over_pow, spherical_bessel_y};
pub use bessel_k::bessel_k;
pub use gamma::{gamma, ln_gamma};
pub use incomplete_gamma::upper_incomplete_gamma;
pub use sici::{cosine_integral, sine_integral, EULER_GAMMA};
pub use zeros::{bessel_j_zero, BesselZeros};

pub(crate) use bessel_j::{j as bessel_j_unchecked, kernel_y, lambda as bessel_lambda};
pub(crate) use bessel_k::k as bessel_k_unchecked;
pub(crate) use gamma::gamma_unchecked;
pub(crate) use sici::sici;
