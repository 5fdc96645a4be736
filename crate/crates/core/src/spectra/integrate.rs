use core::f64::consts::PI;

use super::measure::{PieceShape, Representation, SpectralMeasure};
use super::transforms::TransformOptions;
use super::{sphere_area, Kernel};
use crate::error::Result;
use crate::quad::{integrate_panels, Integral, Tail, Tolerance};
use crate::specfun::BesselZeros;

impl SpectralMeasure {
    /// `∫_{[0, upper)} K dG`, or over `[0, ∞)` when `upper` is `None`.
    pub(crate) fn integrate(&self, k: Kernel, upper: Option<f64>, opts: &TransformOptions) -> Result<Integral> {
        let up = upper.unwrap_or(f64::INFINITY);
        match &self.repr {
            Representation::Atoms(atoms) => Ok(Integral::exact(
                atoms
                    .iter()
                    .filter(|a| a.location < up)
                    .map(|a| a.mass * k.value(a.location))
                    .sum(),
            )),
            Representation::RadialDensity {
                density,
                support_end,
                breakpoints,
            } => {
                let n = self.dimension;
                let w = sphere_area(n);
                let gp = |l: f64| w * libm::pow(l, n as f64 - 1.0) * density(l);
                let hi = support_end.unwrap_or(f64::INFINITY).min(up);
                density_segment(&k, &gp, 0.0, hi, breakpoints, opts)
            }
            Representation::Piecewise(pieces) => {
                let mut total = Integral::exact(0.0);
                for p in pieces {
                    let hi = p.hi.min(up);
                    if hi <= p.lo {
                        continue;
                    }
                    total = total
                        + match &p.shape {
                            PieceShape::Density(f) => density_segment(&k, &|l| f(l), p.lo, hi, &[], opts)?,
                            PieceShape::Constant(c) => {
                                let c = *c;
                                if c == 0.0 {
                                    continue;
                                }
                                constant_segment(&k, c, p.lo, hi, opts)?
                            }
                            PieceShape::ReciprocalOscillation {
                                base,
                                amplitude,
                                frequency,
                            } => {
                                density_segment(&k, &|l| base(l), 0.0, hi, &[], opts)?
                                    + reciprocal_segment(&k, &|l| amplitude(l), *frequency, hi, opts)?
                            }
                        };
                }
                Ok(total)
            }
            Representation::Distribution {
                cdf,
                support_end,
                breakpoints,
            } => {
                let g = |l: f64| cdf(l);
                distribution_integral(&k, &g, self.total_mass, *support_end, breakpoints, upper, opts)
            }
        }
    }
}

fn constant_segment(k: &Kernel, c: f64, lo: f64, hi: f64, opts: &TransformOptions) -> Result<Integral> {
    if let Kernel::Power { p } = *k {
        let v = if p == -1.0 {
            libm::log(hi / lo)
        } else {
            (libm::pow(hi, p + 1.0) - libm::pow(lo, p + 1.0)) / (p + 1.0)
        };
        return Ok(Integral::exact(c * v));
    }
    density_segment(k, &|_| c, lo, hi, &[], opts)
}

/// Bessel-zero panel edges `j_{ν,k}/r` beyond `from`.
fn bessel_edges(nu: f64, r: f64, from: f64) -> impl Iterator<Item = f64> {
    BesselZeros::near(nu, from * r).map(move |z| z / r)
}

/// Adaptive integral over `[lo, hi]`, `hi` possibly infinite.
pub(crate) fn smooth(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, bps: &[f64], tol: Tolerance) -> Integral {
    let mut pts = alloc::vec![lo];
    pts.extend(bps.iter().copied().filter(|&b| b > lo && b < hi));
    if hi.is_finite() {
        pts.push(hi);
        return crate::quad::integrate_points(f, &pts, tol);
    }
    let last = *pts.last().unwrap_or(&lo);
    let head = if pts.len() > 1 {
        crate::quad::integrate_points(f, &pts, tol)
    } else {
        Integral::exact(0.0)
    };
    head + crate::quad::integrate_to_infinity(f, last, tol)
}

/// `∫_lo^hi K(λ) G′(λ) dλ` for a density on `[lo, hi]`.
pub(crate) fn density_segment(
    k: &Kernel,
    gp: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    bps: &[f64],
    opts: &TransformOptions,
) -> Result<Integral> {
    if hi <= lo {
        return Ok(Integral::exact(0.0));
    }
    let a = k.averaging_threshold();
    let mut total = Integral::exact(0.0);
    let t_hi = hi.min(a);
    if t_hi > lo {
        let f = |l: f64| {
            let g = gp(l);
            if g == 0.0 {
                0.0
            } else {
                k.value(l) * g
            }
        };
        total = total
            + match k.oscillation() {
                Some((nu, r)) => {
                    let mut edges = bessel_edges(nu, r, lo);
                    let end = t_hi.is_finite().then_some(t_hi);
                    integrate_panels(&f, lo, end, &mut edges, bps, Tail::Extrapolate, opts.measure_panel_options())?
                }
                None => smooth(&f, lo, t_hi, bps, opts.tol),
            };
    }
    if hi > a {
        let f = |l: f64| {
            let g = gp(l);
            if g == 0.0 {
                0.0
            } else {
                k.averaged(l) * g
            }
        };
        total = total + smooth(&f, lo.max(a), hi, bps, opts.tol);
    }
    Ok(total)
}

/// `∫_0^hi K(λ) amp(λ) cos(ω/λ) dλ`. Below `λ_c = √(ω/r)/2`, where `cos(ω/λ)`
/// oscillates at least four times faster than the kernel, the substitution
/// `u = 1/λ` turns it into `cos(ωu)`, integrated over its half periods.
fn reciprocal_segment(
    k: &Kernel,
    amp: &dyn Fn(f64) -> f64,
    omega: f64,
    hi: f64,
    opts: &TransformOptions,
) -> Result<Integral> {
    let lam_c = match k.oscillation() {
        Some((_, r)) => (0.5 * libm::sqrt(omega / r)).min(hi),
        None => hi,
    };
    let a = k.averaging_threshold();
    let c1 = lam_c.min(a).min(hi);
    let po = opts.measure_panel_options();

    let g1 = |u: f64| {
        let l = 1.0 / u;
        k.value(l) * amp(l) * libm::cos(omega * u) / (u * u)
    };
    let mut total = integrate_panels(&g1, 1.0 / c1, None, &mut cos_edges(omega, 1.0 / c1), &[], Tail::Extrapolate, po)?;

    let mid_hi = hi.min(a);
    if mid_hi > c1 {
        let f = |l: f64| k.value(l) * amp(l) * libm::cos(omega / l);
        let (nu, r) = k.oscillation().unwrap_or((0.0, 1.0));
        let mut edges = bessel_edges(nu, r, c1);
        total = total + integrate_panels(&f, c1, Some(mid_hi), &mut edges, &[], Tail::Extrapolate, po)?;
    }
    if hi > a {
        let from = a.max(c1);
        let g3 = |u: f64| {
            let l = 1.0 / u;
            k.averaged(l) * amp(l) * libm::cos(omega * u) / (u * u)
        };
        total = total
            + integrate_panels(&g3, 1.0 / hi, Some(1.0 / from), &mut cos_edges(omega, 1.0 / hi), &[], Tail::Extrapolate, po)?;
    }
    Ok(total)
}

fn cos_edges(omega: f64, from: f64) -> impl Iterator<Item = f64> {
    let k0 = libm::floor(from * omega / PI - 0.5).max(0.0) as u64;
    (k0..).map(move |k| (k as f64 + 0.5) * PI / omega)
}

/// Integration by parts against a distribution function `G`.
fn distribution_integral(
    k: &Kernel,
    cdf: &dyn Fn(f64) -> f64,
    total: f64,
    support_end: Option<f64>,
    bps: &[f64],
    upper: Option<f64>,
    opts: &TransformOptions,
) -> Result<Integral> {
    let derivative_part = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| -> Result<Integral> {
        if hi <= lo {
            return Ok(Integral::exact(0.0));
        }
        match k.derivative_oscillation() {
            Some((nu, r)) => {
                let mut edges = bessel_edges(nu, r, lo);
                let end = hi.is_finite().then_some(hi);
                integrate_panels(f, lo, end, &mut edges, bps, Tail::Extrapolate, opts.measure_panel_options())
            }
            None => Ok(smooth(f, lo, hi, bps, opts.tol)),
        }
    };
    let end = support_end.unwrap_or(f64::INFINITY);
    if let Some(up) = upper {
        // ∫_{[0,up)} K dG = K(up) G(up) − ∫_0^up G K′
        let f = |l: f64| cdf(l) * k.derivative(l);
        let part = derivative_part(&f, 0.0, up)?;
        return Ok(Integral::exact(k.value(up) * cdf(up)) + part * -1.0);
    }
    let a = k.averaging_threshold();
    if end <= a {
        // K(0) G(∞) + ∫_0^∞ (G(∞) − G) K′
        let f = |l: f64| (total - cdf(l)) * k.derivative(l);
        let part = derivative_part(&f, 0.0, end)?;
        return Ok(Integral::exact(k.value(0.0) * total) + part);
    }
    let f = |l: f64| cdf(l) * k.derivative(l);
    let head = Integral::exact(k.value(a) * cdf(a)) + derivative_part(&f, 0.0, a)? * -1.0;
    let ga = cdf(a);
    let g = |l: f64| (total - cdf(l)) * k.averaged_derivative(l);
    let tail = Integral::exact(k.averaged(a) * (total - ga)) + smooth(&g, a, end, bps, opts.tol);
    Ok(head + tail)
}
