use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::asymptotics::squared_bessel_moment;
use crate::error::{Error, Result};
use crate::functionals::var_ball_normalized;
use crate::quad::{integrate_points, Tolerance};
use crate::specfun::bessel_lambda;
use crate::spectra::{Piece, PieceShape, SpectralMeasure};

use super::params::invalid;

/// Pieces stop once their left end falls below this; the last `ε` piece
/// reaches down to 0.
const SMALLEST: f64 = 1e-300;

/// A spectral distribution whose `G′(1/·)` lies in `OR(0, 0)` but is not
/// slowly varying: `G′ = 1` on `(1/(2T^{2k+1}), 1/T^{2k+1}]`, `ε` on
/// `(1/T^{2k+3}, 1/(2T^{2k+1})]`, `k ≥ 0`, and `0` above `1/T`.
///
/// With `S_n(λ) = J²_{n/2}(λ)/λⁿ`, `A = ∫_{1/2}^1 S_n`, `B = ∫_0^∞ S_n`, the
/// defaults take `δ₁ = δ₂ = A/100`, `ε = A/(100B)` and `T` the smallest value
/// above 2 with `∫_{T/2}^∞ S_n < δ₁` and `∫_0^{1/T} S_n < δ₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrConstruction {
    pub dimension: u32,
    pub t: f64,
    pub epsilon: f64,
    /// `∫_{T/2}^∞ S_n` for the chosen `T`.
    pub delta1: f64,
    /// `∫_0^{1/T} S_n` for the chosen `T`.
    pub delta2: f64,
    pub a_integral: f64,
    pub b_integral: f64,
}

/// `b̃_n(λt)/b̃_n(λ)` with `t = T` along `λ = T^{2k}` and `λ = T^{2k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrRatioTrace {
    /// `(λ, ratio)` for `λ = T^{2k}`, `k ≥ 1`.
    pub even: Vec<(f64, f64)>,
    /// `(λ, ratio)` for `λ = T^{2k+1}`, `k ≥ 0`.
    pub odd: Vec<(f64, f64)>,
    /// Guaranteed lower bound of the even ratios, `A/((δ₁ + δ₂ + Bε)T)`.
    pub even_lower_bound: f64,
    /// Guaranteed upper bound of the odd ratios, `(δ₁ + δ₂ + Bε)/(AT)`.
    pub odd_upper_bound: f64,
}

fn s_n(n: u32) -> impl Fn(f64) -> f64 {
    let nu = 0.5 * n as f64;
    move |l: f64| {
        let v = bessel_lambda(nu, l);
        v * v
    }
}

impl OrConstruction {
    /// Builds the construction, choosing `T` and `ε` by default.
    pub fn new(dimension: u32, t: Option<f64>, epsilon: Option<f64>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Dimension(dimension));
        }
        let s = s_n(dimension);
        let tol = Tolerance::new(0.0, 1e-13);
        let a_integral = integrate_points(&s, &[0.5, 1.0], tol).require()?;
        let b_integral = squared_bessel_moment(0.5 * dimension as f64, -(dimension as f64))?;
        let below = |x: f64| integrate_points(&s, &[0.0, x], tol).value;
        let tail = |t: f64| b_integral - integrate_points(&s, &[0.0, 1.0, 0.5 * t], tol).value;
        let target = a_integral / 100.0;
        let t = match t {
            Some(t) if t > 2.0 && t.is_finite() => t,
            Some(_) => return Err(invalid("T", "must be > 2")),
            None => {
                // both conditions are monotone in T; bisect each on a log scale
                let smallest = |cond: &dyn Fn(f64) -> bool| {
                    if cond(2.0) {
                        return 2.0;
                    }
                    let (mut lo, mut hi) = (2.0f64, 4.0f64);
                    while !cond(hi) {
                        lo = hi;
                        hi *= 2.0;
                    }
                    for _ in 0..60 {
                        let mid = libm::sqrt(lo * hi);
                        if cond(mid) {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    hi
                };
                let t1 = smallest(&|t| tail(t) < target);
                let t2 = smallest(&|t| below(1.0 / t) < target);
                t1.max(t2) * (1.0 + 1e-9)
            }
        };
        let epsilon = match epsilon {
            Some(e) if e > 0.0 && e < 1.0 => e,
            Some(_) => return Err(invalid("eps", "must lie in (0, 1)")),
            None => a_integral / (100.0 * b_integral),
        };
        let c = OrConstruction {
            dimension,
            t,
            epsilon,
            delta1: tail(t),
            delta2: below(1.0 / t),
            a_integral,
            b_integral,
        };
        if c.leakage() >= c.a_integral {
            return Err(invalid("T", "delta1 + delta2 + B*eps must stay below A"));
        }
        Ok(c)
    }

    fn leakage(&self) -> f64 {
        self.delta1 + self.delta2 + self.b_integral * self.epsilon
    }

    /// `G′(λ)`.
    pub fn derivative(&self, lambda: f64) -> f64 {
        if !(lambda > 0.0) || lambda > 1.0 / self.t {
            return 0.0;
        }
        if lambda < SMALLEST {
            return self.epsilon;
        }
        // λ ∈ (1/T^{m+1}, 1/T^m] with m odd or even decides the level
        let m = libm::floor(-libm::log(lambda) / libm::log(self.t));
        let mut m = m as i64;
        // guard against rounding at the piece ends
        while lambda > libm::pow(self.t, -(m as f64)) {
            m -= 1;
        }
        while lambda <= libm::pow(self.t, -(m as f64 + 1.0)) {
            m += 1;
        }
        if m % 2 == 1 {
            // (1/T^{m+1}, 1/T^m], m = 2k+1: one on the upper half
            if lambda > 0.5 * libm::pow(self.t, -(m as f64)) {
                1.0
            } else {
                self.epsilon
            }
        } else {
            self.epsilon
        }
    }

    /// Constant pieces of `G′`, increasing.
    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        let mut k = 0i32;
        loop {
            let top = libm::pow(self.t, -(2 * k + 1) as f64);
            let next = libm::pow(self.t, -(2 * k + 3) as f64);
            out.push(Piece {
                lo: 0.5 * top,
                hi: top,
                shape: PieceShape::Constant(1.0),
            });
            let last = next < SMALLEST;
            out.push(Piece {
                lo: if last { 0.0 } else { next },
                hi: 0.5 * top,
                shape: PieceShape::Constant(self.epsilon),
            });
            if last {
                break;
            }
            k += 1;
        }
        out.reverse();
        out
    }

    pub fn measure(&self) -> Result<SpectralMeasure> {
        SpectralMeasure::from_pieces(self.dimension, self.pieces())
    }

    /// `G′` as a shared callable.
    pub fn derivative_fn(&self) -> crate::RealFn {
        let c = self.clone();
        Arc::new(move |l: f64| c.derivative(l))
    }

    /// Ratio trace of `b̃_n` with `k ≤ k_max`.
    pub fn ratio_trace(&self, measure: &SpectralMeasure, k_max: u32) -> Result<OrRatioTrace> {
        let b = |r: f64| var_ball_normalized(measure, r);
        let t = self.t;
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for k in 0..=k_max {
            let lo = libm::pow(t, (2 * k + 1) as f64);
            odd.push((lo, b(lo * t)? / b(lo)?));
            if k >= 1 {
                let le = libm::pow(t, (2 * k) as f64);
                even.push((le, b(le * t)? / b(le)?));
            }
        }
        let leak = self.leakage();
        Ok(OrRatioTrace {
            even,
            odd,
            even_lower_bound: self.a_integral / (leak * t),
            odd_upper_bound: leak / (self.a_integral * t),
        })
    }
}
