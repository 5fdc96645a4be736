//! Regular variation and the Abelian/Tauberian theorems.
//!
//! [`c1`]–[`c4`] and [`bingham_constant`] are the closed-form constants;
//! [`ball_constant`] and [`sphere_constant`] evaluate the constants realized
//! by `b_n` and `l_n` by quadrature. The estimators in this module read
//! exponents, slow variation and Matuszewska brackets off sampled functions,
//! and [`verify_theorem_pair`] checks both sides of a theorem on a catalog
//! model.

mod constants;
mod regular_variation;
mod verify;

pub(crate) use constants::squared_bessel_moment;
pub use constants::{ball_constant, bingham_constant, c1, c2, c3, c4, sphere_constant};
pub use regular_variation::{
    bingham_gamma2_check, estimate_tail_exponent, geometric_grid, matuszewska_indices, slow_variation_test,
    AsymptoticLaw, BinghamReport, Direction, MatuszewskaEstimate, SlowVariationReport,
};
pub use verify::{converges, verify_theorem_pair, verify_with, TheoremId, TheoremReport, Verdict, VerifyConfig};
