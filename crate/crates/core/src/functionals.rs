//! Variances of the ball and sphere averages
//! `η(r) = ∫_{v(r)} ξ(x) dx` and `ζ(r) = ∫_{s(r)} ξ(x) dm(x)`:
//!
//! ```text
//! b_n(r) = (2π)ⁿ r^{2n}     ∫ J²_{n/2}(λr) (λr)^{−n} dG(λ)
//! l_n(r) = (2π)ⁿ r^{2(n−1)} ∫ J²_{(n−2)/2}(λr) (λr)^{2−n} dG(λ)
//! ```
//!
//! plus a Monte Carlo evaluation of `∫_{v(r)}∫_{v(r)} B(‖x − y‖) dx dy`.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::error::{ensure_finite, Error, Result};
use crate::quad::Integral;
use crate::spectra::{ball_volume, CovarianceModel, Kernel, SpectralMeasure, TransformOptions};

/// Averaging set of a functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AveragingSet {
    Ball,
    Sphere,
}

/// Variance of an averaged functional at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragedVariance {
    pub kind: AveragingSet,
    pub dimension: u32,
    pub r: f64,
    pub value: f64,
    pub error: f64,
}

fn default_options() -> TransformOptions {
    TransformOptions::with_tol(0.0, 1e-10)
}

fn check_radius(function: &'static str, r: f64) -> Result<()> {
    ensure_finite(function, r)?;
    if r > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: r,
            expected: "r > 0",
        })
    }
}

/// Normalized variance `b_n(r)/r^{2n}` or `l_n(r)/r^{2(n−1)}`.
pub fn averaged_variance_normalized(
    m: &SpectralMeasure,
    kind: AveragingSet,
    r: f64,
    opts: &TransformOptions,
) -> Result<Integral> {
    let n = m.dimension();
    let nu = match kind {
        AveragingSet::Ball => {
            check_radius("var_ball", r)?;
            0.5 * n as f64
        }
        AveragingSet::Sphere => {
            check_radius("var_sphere", r)?;
            if n < 2 {
                return Err(Error::Dimension(n));
            }
            0.5 * (n as f64 - 2.0)
        }
    };
    let scale = libm::pow(2.0 * core::f64::consts::PI, n as f64);
    m.integrate(Kernel::Squared { nu, r, scale }, None, opts)
}

/// `b_n(r)` or `l_n(r)` with its error estimate.
pub fn averaged_variance(m: &SpectralMeasure, kind: AveragingSet, r: f64) -> Result<AveragedVariance> {
    let v = averaged_variance_normalized(m, kind, r, &default_options())?;
    if !v.converged {
        return Err(Error::NonConvergence {
            value: v.value,
            error: v.error,
        });
    }
    let p = match kind {
        AveragingSet::Ball => 2.0 * m.dimension() as f64,
        AveragingSet::Sphere => 2.0 * (m.dimension() as f64 - 1.0),
    };
    let f = libm::pow(r, p);
    Ok(AveragedVariance {
        kind,
        dimension: m.dimension(),
        r,
        value: v.value * f,
        error: v.error * f,
    })
}

/// `b_n(r)`.
///
/// ```
/// use std::sync::Arc;
/// use lrd_spectra_core::functionals::var_ball;
/// use lrd_spectra_core::spectra::SpectralMeasure;
///
/// let g = SpectralMeasure::from_distribution(3, Arc::new(|l: f64| l.min(1.0).powi(2)), 1.0, Some(1.0), vec![]).unwrap();
/// let r = 2.0f64;
/// let exact = 4.0 * std::f64::consts::PI.powi(2)
///     * (2.0 * r.powi(4) - 2.0 * r * r + 2.0 * (2.0 * r).sin() * r - 1.0 + (2.0 * r).cos());
/// assert!((var_ball(&g, r).unwrap() / exact - 1.0).abs() < 1e-7);
/// ```
pub fn var_ball(m: &SpectralMeasure, r: f64) -> Result<f64> {
    Ok(averaged_variance(m, AveragingSet::Ball, r)?.value)
}

/// `l_n(r)`; needs `n ≥ 2`.
pub fn var_sphere(m: &SpectralMeasure, r: f64) -> Result<f64> {
    Ok(averaged_variance(m, AveragingSet::Sphere, r)?.value)
}

/// `b̃_n(r) = b_n(r)/r^{2n}`.
pub fn var_ball_normalized(m: &SpectralMeasure, r: f64) -> Result<f64> {
    averaged_variance_normalized(m, AveragingSet::Ball, r, &default_options())?.require()
}

/// `l̃_n(r) = l_n(r)/r^{2(n−1)}`.
pub fn var_sphere_normalized(m: &SpectralMeasure, r: f64) -> Result<f64> {
    averaged_variance_normalized(m, AveragingSet::Sphere, r, &default_options())?.require()
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl MonteCarloEstimate {
    /// Whether `value` lies within `k` standard errors.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.estimate - value).abs() <= k * self.std_error
    }
}

/// Smallest accepted sample count for [`var_ball_bruteforce`].
pub const MIN_SAMPLES: usize = 10_000;

/// `∫_{v(r)}∫_{v(r)} B(‖x − y‖) dx dy` from `samples` independent pairs of
/// uniform points in the ball, drawn from a ChaCha8 stream seeded by `seed`.
pub fn var_ball_bruteforce(c: &CovarianceModel, r: f64, samples: usize, seed: u64) -> Result<MonteCarloEstimate> {
    check_radius("var_ball_bruteforce", r)?;
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter {
            name: "samples".into(),
            reason: alloc::format!("need at least {MIN_SAMPLES}, got {samples}"),
        });
    }
    let n = c.dimension() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = Uniform::new(0.0f64, 1.0);
    let inv_n = 1.0 / n as f64;
    let mut x: Vec<f64> = alloc::vec![0.0; n];
    let mut y: Vec<f64> = alloc::vec![0.0; n];
    let point = |rng: &mut ChaCha8Rng, out: &mut [f64]| loop {
        let mut norm2 = 0.0;
        for v in out.iter_mut() {
            *v = StandardNormal.sample(rng);
            norm2 += *v * *v;
        }
        if norm2 > 0.0 {
            let radius = r * libm::pow(unit.sample(rng), inv_n) / libm::sqrt(norm2);
            out.iter_mut().for_each(|v| *v *= radius);
            return;
        }
    };
    let (mut mean, mut m2) = (0.0, 0.0);
    for i in 0..samples {
        point(&mut rng, &mut x);
        point(&mut rng, &mut y);
        let d2: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
        let v = c.eval(libm::sqrt(d2));
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    let vol = ball_volume(c.dimension()) * libm::pow(r, n as f64);
    let sd = libm::sqrt(m2 / (samples - 1) as f64);
    Ok(MonteCarloEstimate {
        estimate: vol * vol * mean,
        std_error: vol * vol * sd / libm::sqrt(samples as f64),
        samples,
    })
}
