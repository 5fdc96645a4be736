use alloc::vec::Vec;

use super::gauss_kronrod::adaptive;
use super::{EpsilonTable, Integral, Tolerance};
use crate::error::{ensure_finite, Error, Result};
use crate::specfun::{bessel_j_unchecked, BesselZeros};

/// How a panel sum over an unbounded range is terminated.
#[derive(Clone, Copy)]
pub enum Tail<'a> {
    /// Accelerate the partial sums with the epsilon algorithm.
    Extrapolate,
    /// `bound(t)` bounds `|∫_t^∞ f|`; summation stops once it is below target.
    Bound(&'a dyn Fn(f64) -> f64),
}

impl core::fmt::Debug for Tail<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Tail::Extrapolate => f.write_str("Extrapolate"),
            Tail::Bound(_) => f.write_str("Bound(..)"),
        }
    }
}

/// Panel integration settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelOptions {
    pub tol: Tolerance,
    pub max_panels: usize,
    pub min_panels: usize,
    /// Raise [`Error::TailDivergence`] when panel magnitudes stop shrinking,
    /// and trust extrapolation only over shrinking panels. Turn off for
    /// integrals known to converge whose envelope may grow for a while.
    pub detect_divergence: bool,
}

impl Default for PanelOptions {
    fn default() -> Self {
        PanelOptions {
            tol: Tolerance::new(1e-8, 1e-10),
            max_panels: 200,
            min_panels: 6,
            detect_divergence: true,
        }
    }
}

/// `∫_0^∞ f(t) J_ν(ωt) dt` by panels between consecutive zeros of
/// `J_ν(ωt)` with epsilon-algorithm acceleration.
///
/// A result that misses the tolerance within `max_panels` panels comes back
/// with `converged == false` and the best available value.
///
/// ```
/// # use lrd_spectra_core::quad::{oscillatory_integral, Tolerance};
/// let r = oscillatory_integral(|t: f64| (-t).exp(), 0.0, 1.0, Tolerance::new(1e-10, 0.0)).unwrap();
/// assert!((r.value - 0.5f64.sqrt()).abs() < 1e-9);
/// ```
pub fn oscillatory_integral<F: Fn(f64) -> f64>(
    f: F,
    nu: f64,
    omega: f64,
    tol: Tolerance,
) -> Result<Integral> {
    ensure_finite("oscillatory_integral", nu)?;
    ensure_finite("oscillatory_integral", omega)?;
    if nu < -0.5 {
        return Err(Error::Domain {
            function: "oscillatory_integral",
            value: nu,
            expected: "nu >= -1/2",
        });
    }
    if omega <= 0.0 {
        return Err(Error::NonPositive { value: omega });
    }
    let g = |t: f64| {
        let v = f(t);
        if v == 0.0 {
            0.0
        } else {
            v * bessel_j_unchecked(nu, omega * t)
        }
    };
    let mut edges = BesselZeros::new(nu).map(|z| z / omega);
    let opts = PanelOptions {
        tol,
        ..PanelOptions::default()
    };
    integrate_panels(&g, 0.0, None, &mut edges, &[], Tail::Extrapolate, opts)
}

/// Sums adaptive integrals over `[start, e1], [e1, e2], …` where `e_k` come
/// from `edges`, stopping at `end` when given. `breakpoints` are merged into
/// the panels they fall in.
/// Panel budget for finite ranges, which cannot be extrapolated.
const FINITE_PANEL_CAP: usize = 2_000_000;

pub(crate) fn integrate_panels(
    f: &dyn Fn(f64) -> f64,
    start: f64,
    end: Option<f64>,
    edges: &mut dyn Iterator<Item = f64>,
    breakpoints: &[f64],
    tail: Tail<'_>,
    opts: PanelOptions,
) -> Result<Integral> {
    let panel_tol = Tolerance::new(opts.tol.abs * 1e-2, opts.tol.rel.min(1e-11));
    let mut sum = 0.0;
    let mut err_acc = 0.0;
    let mut all_converged = true;
    let mut cur = start;
    let mut table = EpsilonTable::new();
    let mut magnitudes: Vec<f64> = Vec::new();
    let mut hits = 0;
    let mut diverging_since: Option<usize> = None;
    let mut best = (0.0, f64::INFINITY);
    let mut pts: Vec<f64> = Vec::with_capacity(8);
    loop {
        let mut edge = match edges.next() {
            Some(e) if e.is_finite() => e,
            _ => {
                return Err(Error::NonConvergence {
                    value: sum,
                    error: f64::INFINITY,
                })
            }
        };
        if edge <= cur {
            continue;
        }
        let mut last = false;
        if let Some(e) = end {
            if edge >= e {
                edge = e;
                last = true;
            }
        }
        pts.clear();
        pts.push(cur);
        pts.extend(breakpoints.iter().copied().filter(|&b| b > cur && b < edge));
        pts.push(edge);
        let r = adaptive(f, &pts, panel_tol, 200);
        sum += r.value;
        err_acc += r.error;
        // a panel counts as converged once its error is negligible against the running sum
        all_converged &= r.converged || r.error <= 1e-2 * opts.tol.target(sum);
        magnitudes.push(r.value.abs());
        cur = edge;
        let panels = magnitudes.len();
        if last {
            return Ok(Integral {
                value: sum,
                error: err_acc,
                converged: all_converged,
            });
        }
        if end.is_some() {
            if panels >= opts.max_panels.max(FINITE_PANEL_CAP) {
                return Ok(Integral {
                    value: sum,
                    error: f64::INFINITY,
                    converged: false,
                });
            }
            continue;
        }
        match tail {
            Tail::Bound(bound) => {
                let tb = bound(cur);
                if tb < best.1 {
                    best = (sum, tb);
                }
                if panels >= opts.min_panels && tb <= 0.5 * opts.tol.target(sum) {
                    return Ok(Integral {
                        value: sum,
                        error: err_acc + tb,
                        converged: all_converged,
                    });
                }
            }
            Tail::Extrapolate => {
                if let Some((est, e)) = table.push(sum) {
                    if e < best.1 {
                        best = (est, e);
                    }
                    if panels >= opts.min_panels
                        && e <= opts.tol.target(est)
                        && (!opts.detect_divergence || contracting(&magnitudes))
                    {
                        hits += 1;
                        if hits >= if opts.detect_divergence { 2 } else { 3 } {
                            return Ok(Integral {
                                value: est,
                                error: e + err_acc,
                                converged: all_converged,
                            });
                        }
                    } else {
                        hits = 0;
                    }
                }
            }
        }
        if opts.detect_divergence && panels >= 64 && panels % 16 == 0 {
            let recent: f64 = magnitudes[panels / 2..].iter().sum::<f64>() / (panels - panels / 2) as f64;
            let earlier: f64 =
                magnitudes[panels / 4..panels / 2].iter().sum::<f64>() / (panels / 2 - panels / 4) as f64;
            if earlier > 0.0 && recent >= 0.999 * earlier {
                // a transient bump (e.g. a stationary point) leaves the window
                // within one doubling; divergence persists
                let first = *diverging_since.get_or_insert(panels);
                if panels >= 2 * first {
                    return Err(Error::TailDivergence {
                        ratio: recent / earlier,
                    });
                }
            } else {
                diverging_since = None;
            }
        }
        if panels >= opts.max_panels {
            return Ok(Integral {
                value: best.0,
                error: best.1 + err_acc,
                converged: false,
            });
        }
    }
}

// Tail panels must shrink before an extrapolated value is trusted; the
// epsilon algorithm also "sums" divergent sequences.
fn contracting(magnitudes: &[f64]) -> bool {
    let n = magnitudes.len();
    let k = (n / 4).max(2);
    if n < 2 * k {
        return false;
    }
    let recent: f64 = magnitudes[n - k..].iter().sum();
    let earlier: f64 = magnitudes[n - 2 * k..n - k].iter().sum();
    recent < earlier || recent <= f64::MIN_POSITIVE
}
