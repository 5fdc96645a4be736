//! Catalog of closed-form covariance/spectrum pairs with their declared
//! asymptotics.
//!
//! Each [`ModelSpec`] carries the closed forms that are known for it and a
//! [`SpectralMeasure`] (or a [`DirectionalDensity`]) from which every other
//! quantity is computed by transform. [`ModelSpec::eval`] prefers the closed
//! form; [`ModelSpec::eval_transform`] always takes the other route, so the
//! two can be cross-checked.

mod build;
mod linnik;
mod or_construction;
mod params;

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use linnik::{linnik_density_closed, linnik_density_integral};
pub use or_construction::{OrConstruction, OrRatioTrace};
pub use params::Params;

use crate::asymptotics::TheoremId;
use crate::directional::{cov_from_directional, DirectionalDensity};
use crate::error::{Error, Result};
use crate::functionals::{var_ball, var_sphere};
use crate::spectra::{
    cov_from_spectrum, density_from_cov, spectrum_from_cov, CovarianceModel, SpectralMeasure,
};
use crate::{PolarFn, RealFn};

/// Closed form that may decline a point where it loses accuracy
/// (cancellation, removable singularities); the transform route is used there.
pub type ClosedFn = alloc::sync::Arc<dyn Fn(f64) -> Option<f64> + Send + Sync>;

/// Catalog entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    ExpGamma,
    TruncatedQuadratic,
    CauchyBessel,
    Linnik,
    PiecewiseOscillatory,
    SqrtOscillatory,
    OrConstruction,
    DirectionalExp,
    DirectionalTruncated,
}

impl ModelId {
    pub const ALL: [ModelId; 9] = [
        ModelId::ExpGamma,
        ModelId::TruncatedQuadratic,
        ModelId::CauchyBessel,
        ModelId::Linnik,
        ModelId::PiecewiseOscillatory,
        ModelId::SqrtOscillatory,
        ModelId::OrConstruction,
        ModelId::DirectionalExp,
        ModelId::DirectionalTruncated,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            ModelId::ExpGamma => "exp_gamma",
            ModelId::TruncatedQuadratic => "truncated_quadratic",
            ModelId::CauchyBessel => "cauchy_bessel",
            ModelId::Linnik => "linnik",
            ModelId::PiecewiseOscillatory => "piecewise_oscillatory",
            ModelId::SqrtOscillatory => "sqrt_oscillatory",
            ModelId::OrConstruction => "or_construction",
            ModelId::DirectionalExp => "directional_exp",
            ModelId::DirectionalTruncated => "directional_truncated",
        }
    }

    /// Parameter names and their defaults.
    pub fn parameters(self) -> &'static [(&'static str, f64)] {
        match self {
            ModelId::ExpGamma => &[("n", 3.0), ("a", 1.0)],
            ModelId::TruncatedQuadratic => &[("n", 3.0), ("a", 1.0)],
            ModelId::CauchyBessel => &[("n", 6.0), ("kappa", 4.0)],
            ModelId::Linnik => &[("n", 3.0), ("kappa", 1.0), ("nu", 2.0)],
            ModelId::PiecewiseOscillatory | ModelId::SqrtOscillatory => &[],
            // T and eps default to the values chosen at construction
            ModelId::OrConstruction => &[("n", 3.0), ("T", f64::NAN), ("eps", f64::NAN)],
            ModelId::DirectionalExp | ModelId::DirectionalTruncated => &[("theta", 0.0)],
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "generalized_linnik" {
            return Ok(ModelId::Linnik);
        }
        ModelId::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

/// Quantities a model can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// `B(r)`.
    Covariance,
    /// `G(λ)`.
    Distribution,
    /// Isotropic density `g(λ)` (`f(ρ, θ)` for directional models).
    Density,
    /// `b_n(r)`.
    BallVariance,
    /// `l_n(r)`.
    SphereVariance,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::Covariance,
        Quantity::Distribution,
        Quantity::Density,
        Quantity::BallVariance,
        Quantity::SphereVariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Covariance => "cov",
            Quantity::Distribution => "G",
            Quantity::Density => "g",
            Quantity::BallVariance => "b_n",
            Quantity::SphereVariance => "l_n",
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .iter()
            .copied()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::InvalidParameter {
                name: s.to_string(),
                reason: "unknown quantity (expected cov, G, g, b_n or l_n)".to_string(),
            })
    }
}

/// What a model is expected to do under a theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prediction {
    /// Both statement sides hold and agree.
    Holds,
    /// Side (a) fails to converge while side (b) holds.
    SideAFails,
    /// Side (b) fails to converge while side (a) holds.
    SideBFails,
}

/// Declared asymptotics of a model.
#[derive(Clone)]
pub struct Expected {
    /// Exponent `α` of `r^α B(r) ∼ L(r)` (or of `G(λ) ∼ λ^α …`), if any.
    pub alpha: Option<f64>,
    /// Human-readable description of the slowly varying part.
    pub law: &'static str,
    /// `lim r^α B(r)` when `L` tends to a constant.
    pub limit: Option<f64>,
    /// Applicable theorems and the expected outcome.
    pub theorems: Vec<(TheoremId, Prediction)>,
    /// Radii at which the theorem sides are compared (`λ = 1/r`).
    pub scales: Vec<f64>,
    /// `L0` with `1 − B(r) ∼ r² L0` at the origin.
    pub bingham_l0: Option<f64>,
    /// Directional profile of `r^α B(r, θ)` at infinity.
    pub s_profile: Option<RealFn>,
    /// Directional profile of `ρ^{n−α} f(ρ, θ)` at the origin.
    pub s_tilde_profile: Option<RealFn>,
}

impl Expected {
    pub fn prediction(&self, theorem: TheoremId) -> Option<Prediction> {
        self.theorems.iter().find(|t| t.0 == theorem).map(|t| t.1)
    }
}

impl fmt::Debug for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Expected")
            .field("alpha", &self.alpha)
            .field("law", &self.law)
            .field("limit", &self.limit)
            .field("theorems", &self.theorems)
            .field("scales", &self.scales)
            .field("bingham_l0", &self.bingham_l0)
            .finish_non_exhaustive()
    }
}

/// Closed forms of an isotropic model.
#[derive(Clone, Default)]
pub(crate) struct ClosedForms {
    pub cov: Option<ClosedFn>,
    pub distribution: Option<ClosedFn>,
    pub density: Option<ClosedFn>,
    pub ball: Option<ClosedFn>,
    pub sphere: Option<ClosedFn>,
}

/// Directional parts: the density and the closed `B(r, θ)` and `f(ρ, θ)`.
#[derive(Clone)]
pub struct DirectionalParts {
    pub density: DirectionalDensity,
    pub cov: PolarFn,
    pub spectral_density: PolarFn,
    /// Radius below which the closed `B(r, θ)` loses accuracy.
    pub(crate) small_r: f64,
}

impl fmt::Debug for DirectionalParts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectionalParts").field("density", &self.density).finish_non_exhaustive()
    }
}

/// One catalog entry.
#[derive(Clone)]
pub struct ModelSpec {
    pub id: ModelId,
    pub dimension: u32,
    pub params: Params,
    pub expected: Expected,
    /// Where the example lives in the source text.
    pub provenance: &'static str,
    pub(crate) closed: ClosedForms,
    pub(crate) spectrum: Option<SpectralMeasure>,
    pub(crate) directional: Option<DirectionalParts>,
    pub(crate) or_construction: Option<OrConstruction>,
}

impl fmt::Debug for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelSpec")
            .field("id", &self.id)
            .field("dimension", &self.dimension)
            .field("params", &self.params)
            .field("expected", &self.expected)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

/// Every catalog entry with default parameters.
pub fn catalog() -> Result<Vec<ModelSpec>> {
    ModelId::ALL.iter().map(|&id| ModelSpec::build(id, &Params::new())).collect()
}

impl ModelSpec {
    /// Builds a model; unspecified parameters take their defaults.
    pub fn build(id: ModelId, params: &Params) -> Result<ModelSpec> {
        let allowed: Vec<&str> = id.parameters().iter().map(|p| p.0).collect();
        params.check_names(&allowed)?;
        build::build(id, params)
    }

    /// Spectral measure of an isotropic model.
    pub fn spectrum(&self) -> Option<&SpectralMeasure> {
        self.spectrum.as_ref()
    }

    pub fn directional(&self) -> Option<&DirectionalParts> {
        self.directional.as_ref()
    }

    pub fn or_construction(&self) -> Option<&OrConstruction> {
        self.or_construction.as_ref()
    }

    pub fn is_directional(&self) -> bool {
        self.directional.is_some()
    }

    /// Whether a closed form exists for `q` (somewhere on its domain).
    pub fn has_closed_form(&self, q: Quantity) -> bool {
        if self.directional.is_some() {
            return matches!(q, Quantity::Covariance | Quantity::Density);
        }
        self.closed_fn(q).is_some()
    }

    fn closed_fn(&self, q: Quantity) -> Option<&ClosedFn> {
        match q {
            Quantity::Covariance => self.closed.cov.as_ref(),
            Quantity::Distribution => self.closed.distribution.as_ref(),
            Quantity::Density => self.closed.density.as_ref(),
            Quantity::BallVariance => self.closed.ball.as_ref(),
            Quantity::SphereVariance => self.closed.sphere.as_ref(),
        }
    }

    fn unavailable(&self, q: Quantity) -> Error {
        Error::Unavailable {
            quantity: q.name(),
            model: self.id.name(),
        }
    }

    /// Closed-form value, or [`Error::Unavailable`] when none is known at `x`.
    pub fn eval_closed(&self, q: Quantity, x: f64) -> Result<f64> {
        check_point(x)?;
        if let Some(d) = &self.directional {
            let theta = self.params.real("theta", 0.0);
            return match q {
                Quantity::Covariance if x >= d.small_r || x == 0.0 => Ok((d.cov)(x, theta)),
                Quantity::Density if x > 0.0 => Ok((d.spectral_density)(x, theta)),
                _ => Err(self.unavailable(q)),
            };
        }
        self.closed_fn(q)
            .and_then(|f| f(x))
            .ok_or_else(|| self.unavailable(q))
    }

    /// The closed form where known, the spectral route otherwise.
    ///
    /// `x` is `r` for covariances and variances and `λ` for `G` and `g`.
    pub fn eval(&self, q: Quantity, x: f64) -> Result<f64> {
        match self.eval_closed(q, x) {
            Ok(v) => Ok(v),
            Err(Error::Unavailable { .. }) => self.eval_spectral(q, x),
            Err(e) => Err(e),
        }
    }

    /// Directional `B(r, θ)` (closed form, numeric below the accuracy radius).
    pub fn eval_polar(&self, q: Quantity, r: f64, theta: f64) -> Result<f64> {
        check_point(r)?;
        let d = self.directional.as_ref().ok_or_else(|| self.unavailable(q))?;
        match q {
            Quantity::Covariance if r >= d.small_r || r == 0.0 => Ok((d.cov)(r, theta)),
            Quantity::Covariance => cov_from_directional(&d.density, r, theta),
            Quantity::Density if r > 0.0 => Ok((d.spectral_density)(r, theta)),
            _ => Err(self.unavailable(q)),
        }
    }

    // values from the spectral measure, falling back to inversion of B
    fn eval_spectral(&self, q: Quantity, x: f64) -> Result<f64> {
        if let Some(d) = &self.directional {
            let theta = self.params.real("theta", 0.0);
            return match q {
                Quantity::Covariance => cov_from_directional(&d.density, x, theta),
                _ => Err(self.unavailable(q)),
            };
        }
        let m = self.spectrum.as_ref().ok_or_else(|| self.unavailable(q))?;
        match q {
            Quantity::Covariance => cov_from_spectrum(m, x),
            Quantity::Distribution => m.distribution(x),
            Quantity::Density => match m.density(x) {
                Some(v) => Ok(v),
                None => self.eval_inverse(q, x),
            },
            Quantity::BallVariance => var_ball(m, x),
            Quantity::SphereVariance => var_sphere(m, x),
        }
    }

    /// `B` as a [`CovarianceModel`]: the closed form, with spectral values
    /// where it declines. Unavailable without a closed isotropic `B`.
    pub fn covariance_model(&self) -> Result<CovarianceModel> {
        let cov = self.closed.cov.clone().ok_or_else(|| self.unavailable(Quantity::Covariance))?;
        let spectrum = self.spectrum.clone();
        CovarianceModel::new(
            self.dimension,
            alloc::sync::Arc::new(move |r: f64| {
                cov(r)
                    .or_else(|| spectrum.as_ref().and_then(|m| cov_from_spectrum(m, r).ok()))
                    .unwrap_or(f64::NAN)
            }),
        )
    }

    // G and g by inverting the closed covariance
    fn eval_inverse(&self, q: Quantity, x: f64) -> Result<f64> {
        if self.closed.cov.is_none() {
            return Err(self.unavailable(q));
        }
        let model = self.covariance_model()?;
        match q {
            Quantity::Distribution => spectrum_from_cov(&model, x),
            Quantity::Density => density_from_cov(&model, x),
            _ => Err(self.unavailable(q)),
        }
    }

    /// The transform route regardless of closed forms: `B` from the spectrum,
    /// `G` and `g` by inverting the closed `B` (spectral values when no
    /// closed `B` exists), `b_n` and `l_n` from the spectrum.
    pub fn eval_transform(&self, q: Quantity, x: f64) -> Result<f64> {
        check_point(x)?;
        match q {
            Quantity::Distribution | Quantity::Density if self.closed.cov.is_some() && self.directional.is_none() => {
                self.eval_inverse(q, x)
            }
            _ => self.eval_spectral(q, x),
        }
    }
}

fn check_point(x: f64) -> Result<()> {
    if x >= 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "model_eval",
            value: x,
            expected: "point >= 0",
        })
    }
}
