//! Numeric estimators for regularly varying functions.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::spectra::SpectralMeasure;

/// Where an asymptotic law holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    AtInfinity,
    AtZero,
}

/// `h(x) ≈ x^ρ L(x)` read off a sampled function.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticLaw {
    /// Fitted exponent `ρ`.
    pub exponent: f64,
    pub direction: Direction,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    /// `(x, h(x)/x^ρ)` on the whole grid, increasing in `x`.
    pub sv_samples: Vec<(f64, f64)>,
}

/// Outcome of [`slow_variation_test`].
#[derive(Debug, Clone, PartialEq)]
pub struct SlowVariationReport {
    pub pass: bool,
    pub max_deviation: f64,
    pub min_deviation: f64,
    /// `(λ, max_t |h(λt)/h(λ) − 1|)` at the scales examined.
    pub trace: Vec<(f64, f64)>,
}

/// Bracket `[β̂, α̂]` for the Matuszewska indices.
#[derive(Debug, Clone, PartialEq)]
pub struct MatuszewskaEstimate {
    pub lower: f64,
    pub upper: f64,
    pub t_grid: Vec<f64>,
    pub scales: Vec<f64>,
    /// False when some ratio left `[1/cap, cap]`; the offending side is then infinite.
    pub bounded: bool,
}

impl MatuszewskaEstimate {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Outcome of [`bingham_gamma2_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct BinghamReport {
    pub lambdas: Vec<f64>,
    /// `∫_0^λ μ² dG(μ)`.
    pub moments: Vec<f64>,
    /// Moments divided by `2n·L0`.
    pub ratios: Vec<f64>,
    pub converged: bool,
}

/// `count` log-spaced points from `lo` to `hi`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || count < 2 {
        return Err(Error::Domain {
            function: "geometric_grid",
            value: lo,
            expected: "0 < lo < hi < inf, count >= 2",
        });
    }
    let (a, b) = (libm::log(lo), libm::log(hi));
    let step = (b - a) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                hi
            } else {
                libm::exp(a + step * i as f64)
            }
        })
        .collect())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 || grid.iter().any(|x| !(*x > 0.0 && x.is_finite())) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain {
            function: "grid",
            value: grid.len() as f64,
            expected: "at least two positive, strictly increasing points",
        });
    }
    Ok(())
}

fn positive(v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonPositive { value: v })
    }
}

/// Least-squares slope of `log h` against `log x` over the last decade of
/// `grid` (the first decade for [`Direction::AtZero`]).
///
/// ```
/// # use lrd_spectra_core::asymptotics::{estimate_tail_exponent, geometric_grid, Direction};
/// let grid = geometric_grid(1.0, 1e3, 30).unwrap();
/// let law = estimate_tail_exponent(|x: f64| Ok(x.powi(-3)), Direction::AtInfinity, &grid).unwrap();
/// assert!((law.exponent + 3.0).abs() < 1e-12 && law.residual < 1e-12);
/// ```
pub fn estimate_tail_exponent<F>(h: F, direction: Direction, grid: &[f64]) -> Result<AsymptoticLaw>
where
    F: Fn(f64) -> Result<f64>,
{
    check_grid(grid)?;
    let logs: Vec<(f64, f64)> = grid
        .iter()
        .map(|&x| Ok((libm::log(x), libm::log(positive(h(x)?)?))))
        .collect::<Result<_>>()?;
    let n = logs.len();
    let mut window: Vec<(f64, f64)> = match direction {
        Direction::AtInfinity => {
            let cut = logs[n - 1].0 - core::f64::consts::LN_10;
            logs.iter().copied().filter(|p| p.0 >= cut - 1e-12).collect()
        }
        Direction::AtZero => {
            let cut = logs[0].0 + core::f64::consts::LN_10;
            logs.iter().copied().filter(|p| p.0 <= cut + 1e-12).collect()
        }
    };
    if window.len() < 2 {
        window = match direction {
            Direction::AtInfinity => logs[n - 2..].to_vec(),
            Direction::AtZero => logs[..2].to_vec(),
        };
    }
    let m = window.len() as f64;
    let mx = window.iter().map(|p| p.0).sum::<f64>() / m;
    let my = window.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = window.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = window.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    let residual = libm::sqrt(
        window
            .iter()
            .map(|p| {
                let e = p.1 - (my + slope * (p.0 - mx));
                e * e
            })
            .sum::<f64>()
            / m,
    );
    let sv_samples = grid
        .iter()
        .zip(&logs)
        .map(|(&x, p)| (x, libm::exp(p.1 - slope * p.0)))
        .collect();
    Ok(AsymptoticLaw {
        exponent: slope,
        direction,
        residual,
        sv_samples,
    })
}

/// `max_{t ∈ t_set} |h(λt)/h(λ) − 1|` at the three largest scales of
/// `grid`; passes when every deviation is within `tol` and the trace does
/// not grow.
///
/// ```
/// # use lrd_spectra_core::asymptotics::slow_variation_test;
/// let rep = slow_variation_test(|l: f64| Ok((2.0 + l).ln()), &[2.0], &[1e8, 1e10, 1e12], 0.05).unwrap();
/// assert!(rep.pass);
/// ```
pub fn slow_variation_test<F>(h: F, t_set: &[f64], grid: &[f64], tol: f64) -> Result<SlowVariationReport>
where
    F: Fn(f64) -> Result<f64>,
{
    check_grid(grid)?;
    if t_set.is_empty() || t_set.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Error::Domain {
            function: "slow_variation_test",
            value: t_set.len() as f64,
            expected: "nonempty set of positive t",
        });
    }
    let scales = &grid[grid.len().saturating_sub(3)..];
    let mut trace = Vec::with_capacity(scales.len());
    for &l in scales {
        let base = positive(h(l)?)?;
        let mut dev = 0.0f64;
        for &t in t_set {
            dev = dev.max((positive(h(l * t)?)? / base - 1.0).abs());
        }
        trace.push((l, dev));
    }
    let max_deviation = trace.iter().fold(0.0f64, |m, p| m.max(p.1));
    let min_deviation = trace.iter().fold(f64::INFINITY, |m, p| m.min(p.1));
    let shrinking = trace.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-3 * tol);
    Ok(SlowVariationReport {
        pass: max_deviation <= tol && shrinking,
        max_deviation,
        min_deviation,
        trace,
    })
}

/// Bracket for the lower and upper Matuszewska indices of `h`: extremes of
/// `log(h(λt)/h(λ))/log t` over `t ∈ t_grid` and the scales in the top two
/// decades of `grid`. A ratio outside `[1/cap, cap]` marks `h` as not in OR.
///
/// ```
/// # use lrd_spectra_core::asymptotics::{matuszewska_indices, geometric_grid};
/// let grid = geometric_grid(1.0, 1e6, 61).unwrap();
/// let m = matuszewska_indices(|x: f64| Ok(x.powf(0.7)), &[2.0, 4.0, 8.0], &grid, 1e6).unwrap();
/// assert!((m.lower - 0.7).abs() < 1e-12 && (m.upper - 0.7).abs() < 1e-12);
/// ```
pub fn matuszewska_indices<F>(h: F, t_grid: &[f64], grid: &[f64], cap: f64) -> Result<MatuszewskaEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    check_grid(grid)?;
    if t_grid.is_empty() || t_grid.iter().any(|t| !(*t > 1.0 && t.is_finite())) {
        return Err(Error::Domain {
            function: "matuszewska_indices",
            value: t_grid.len() as f64,
            expected: "nonempty set of t > 1",
        });
    }
    if !(cap > 1.0) {
        return Err(Error::Domain {
            function: "matuszewska_indices",
            value: cap,
            expected: "cap > 1",
        });
    }
    let top = grid[grid.len() - 1];
    let scales: Vec<f64> = grid.iter().copied().filter(|&x| x >= top * 1e-2 * (1.0 - 1e-12)).collect();
    let (mut lower, mut upper) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut too_big, mut too_small) = (false, false);
    for &l in &scales {
        let base = positive(h(l)?)?;
        for &t in t_grid {
            let ratio = positive(h(l * t)?)? / base;
            too_big |= ratio > cap;
            too_small |= ratio < 1.0 / cap;
            let q = libm::log(ratio) / libm::log(t);
            lower = lower.min(q);
            upper = upper.max(q);
        }
    }
    if too_big {
        upper = f64::INFINITY;
    }
    if too_small {
        lower = f64::NEG_INFINITY;
    }
    Ok(MatuszewskaEstimate {
        lower,
        upper,
        t_grid: t_grid.to_vec(),
        scales,
        bounded: !(too_big || too_small),
    })
}

/// `∫_0^λ μ² dG(μ)` at each `λ` and its ratio to `2n·L0`, the `γ = 2` case
/// of Bingham's theorem with `1 − B(r) ∼ r² L0`. Converged when the last
/// three ratios agree within `tol` and the last is within `tol` of 1.
pub fn bingham_gamma2_check(m: &SpectralMeasure, l0: f64, lambdas: &[f64], tol: f64) -> Result<BinghamReport> {
    positive(l0)?;
    check_grid(lambdas)?;
    let scale = 2.0 * m.dimension() as f64 * l0;
    let moments: Vec<f64> = lambdas
        .iter()
        .map(|&l| m.truncated_moment(2.0, l))
        .collect::<Result<_>>()?;
    let ratios: Vec<f64> = moments.iter().map(|v| v / scale).collect();
    let converged = super::converges(&ratios, tol) && (ratios[ratios.len() - 1] - 1.0).abs() <= tol;
    Ok(BinghamReport {
        lambdas: lambdas.to_vec(),
        moments,
        ratios,
        converged,
    })
}
