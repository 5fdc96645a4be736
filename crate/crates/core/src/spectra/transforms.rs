use core::fmt;

use super::measure::SpectralMeasure;
use super::Kernel;
use crate::error::{ensure_finite, Error, Result};
use crate::quad::{integrate_panels, Integral, PanelOptions, Tail, Tolerance};
use crate::specfun::{bessel_lambda, gamma_unchecked, BesselZeros};
use crate::RealFn;

/// Accuracy and effort limits for the transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformOptions {
    pub tol: Tolerance,
    pub max_panels: usize,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            tol: Tolerance::new(1e-8, 1e-10),
            max_panels: 5000,
        }
    }
}

impl TransformOptions {
    /// Tight settings used for masses and closed-form comparisons.
    pub fn precise() -> Self {
        TransformOptions {
            tol: Tolerance::new(1e-13, 1e-12),
            max_panels: 8000,
        }
    }

    pub fn with_tol(abs: f64, rel: f64) -> Self {
        TransformOptions {
            tol: Tolerance::new(abs, rel),
            ..Self::default()
        }
    }

    pub(crate) fn panel_options(&self) -> PanelOptions {
        PanelOptions {
            tol: self.tol,
            max_panels: self.max_panels,
            min_panels: 6,
            detect_divergence: true,
        }
    }

    /// Integrals against a finite measure with a bounded kernel converge.
    pub(crate) fn measure_panel_options(&self) -> PanelOptions {
        PanelOptions {
            detect_divergence: false,
            ..self.panel_options()
        }
    }
}

/// Radial covariance `B(r)` of an isotropic field in `ℝⁿ`.
#[derive(Clone)]
pub struct CovarianceModel {
    dimension: u32,
    cov: RealFn,
    variance: f64,
}

impl fmt::Debug for CovarianceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CovarianceModel")
            .field("dimension", &self.dimension)
            .field("variance", &self.variance)
            .finish()
    }
}

impl CovarianceModel {
    /// Wraps `B`; the variance is `B(0)`, which must be finite and positive.
    pub fn new(dimension: u32, cov: RealFn) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Dimension(dimension));
        }
        let variance = cov(0.0);
        if !(variance.is_finite() && variance > 0.0) {
            return Err(Error::InvalidParameter {
                name: "B(0)".into(),
                reason: alloc::format!("variance must be finite and positive, got {variance}"),
            });
        }
        Ok(CovarianceModel {
            dimension,
            cov,
            variance,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// `B(0)`.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// `B(r)`; the argument is a distance, so its sign is ignored.
    pub fn eval(&self, r: f64) -> f64 {
        (self.cov)(r.abs())
    }

    pub fn function(&self) -> &RealFn {
        &self.cov
    }
}

/// `B(r) = ∫ Y_n(λr) dG(λ)`.
///
/// ```
/// use std::sync::Arc;
/// use lrd_spectra_core::spectra::{cov_from_spectrum, SpectralMeasure};
///
/// // G(λ) = min(λ², 1) in three dimensions: B(r) = 2(1 − cos r)/r²
/// let g = SpectralMeasure::from_distribution(3, Arc::new(|l: f64| l.min(1.0).powi(2)), 1.0, Some(1.0), vec![]).unwrap();
/// let b = cov_from_spectrum(&g, 2.0).unwrap();
/// assert!((b - 2.0 * (1.0 - 2f64.cos()) / 4.0).abs() < 1e-8);
/// ```
pub fn cov_from_spectrum(m: &SpectralMeasure, r: f64) -> Result<f64> {
    cov_from_spectrum_with(m, r, &TransformOptions::default())?.require()
}

pub fn cov_from_spectrum_with(m: &SpectralMeasure, r: f64, opts: &TransformOptions) -> Result<Integral> {
    ensure_finite("cov_from_spectrum", r)?;
    if r < 0.0 {
        return Err(Error::Domain {
            function: "cov_from_spectrum",
            value: r,
            expected: "r >= 0",
        });
    }
    if r == 0.0 {
        return Ok(Integral::exact(m.total_mass()));
    }
    m.integrate(Kernel::Cov { n: m.dimension(), r }, None, opts)
}

/// `G(λ) = 2^{(2−n)/2} Γ(n/2)^{−1} ∫ J_{n/2}(λr) (λr)^{n/2} B(r)/r dr`.
pub fn spectrum_from_cov(c: &CovarianceModel, lambda: f64) -> Result<f64> {
    spectrum_from_cov_with(c, lambda, &TransformOptions::default())?.require()
}

pub fn spectrum_from_cov_with(c: &CovarianceModel, lambda: f64, opts: &TransformOptions) -> Result<Integral> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::Domain {
            function: "spectrum_from_cov",
            value: lambda,
            expected: "lambda >= 0",
        });
    }
    if lambda == 0.0 {
        return Ok(Integral::exact(0.0));
    }
    if lambda.is_infinite() {
        return Ok(Integral::exact(c.variance()));
    }
    let n = c.dimension() as f64;
    let nu = 0.5 * n;
    let pref = libm::pow(2.0, 1.0 - nu) / gamma_unchecked(nu) * libm::pow(lambda, n);
    let f = |r: f64| {
        let b = c.eval(r);
        if b == 0.0 {
            0.0
        } else {
            pref * libm::pow(r, n - 1.0) * bessel_lambda(nu, lambda * r) * b
        }
    };
    let mut edges = BesselZeros::new(nu).map(|z| z / lambda);
    integrate_panels(&f, 0.0, None, &mut edges, &[], Tail::Extrapolate, opts.panel_options())
}

/// `g(λ) = (2π)^{−n/2} ∫ J_{(n−2)/2}(λr) (λr)^{(2−n)/2} r^{n−1} B(r) dr`.
///
/// The covariance must decay faster than `r^{−(n−1)/2}`; slower decay is
/// reported as [`Error::IntegrabilityViolation`].
pub fn density_from_cov(c: &CovarianceModel, lambda: f64) -> Result<f64> {
    density_from_cov_with(c, lambda, &TransformOptions::default())?.require()
}

pub fn density_from_cov_with(c: &CovarianceModel, lambda: f64, opts: &TransformOptions) -> Result<Integral> {
    ensure_finite("density_from_cov", lambda)?;
    if lambda <= 0.0 {
        return Err(Error::Domain {
            function: "density_from_cov",
            value: lambda,
            expected: "lambda > 0",
        });
    }
    let n = c.dimension() as f64;
    let exponent = envelope_exponent(c, 0.5 * (n - 1.0));
    if exponent > -0.02 {
        return Err(Error::IntegrabilityViolation { exponent });
    }
    let nu = 0.5 * (n - 2.0);
    let pref = libm::pow(2.0 * core::f64::consts::PI, -0.5 * n);
    let f = |r: f64| {
        let b = c.eval(r);
        if b == 0.0 {
            0.0
        } else if nu < 0.0 {
            libm::cos(lambda * r) * b / core::f64::consts::PI
        } else {
            pref * libm::pow(r, n - 1.0) * bessel_lambda(nu, lambda * r) * b
        }
    };
    let mut edges = BesselZeros::new(nu.max(-0.5)).map(|z| z / lambda);
    integrate_panels(&f, 0.0, None, &mut edges, &[], Tail::Extrapolate, opts.panel_options())
}

/// Growth exponent of `r^p · max|B|` between two far windows.
fn envelope_exponent(c: &CovarianceModel, p: f64) -> f64 {
    let window_max = |r0: f64| {
        (0..64)
            .map(|i| c.eval(r0 * (1.0 + 0.5 * i as f64 / 63.0)).abs())
            .fold(0.0f64, f64::max)
            * libm::pow(r0, p)
    };
    let (r1, r2) = (1e3, 1e5);
    let (e1, e2) = (window_max(r1), window_max(r2));
    if e1 == 0.0 && e2 == 0.0 {
        return f64::NEG_INFINITY;
    }
    libm::log(e2 / e1) / libm::log(r2 / r1)
}
