use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SWITCH: f64 = 2.0;
const EPS: f64 = 1e-16;

/// Sine integral `Si(x) = ∫_0^x sin t / t dt` for `x ≥ 0`.
pub fn sine_integral(x: f64) -> Result<f64> {
    ensure_finite("sine_integral", x)?;
    if x < 0.0 {
        return Err(Error::Domain {
            function: "sine_integral",
            value: x,
            expected: "x >= 0",
        });
    }
    if x.is_infinite() {
        return Ok(FRAC_PI_2);
    }
    Ok(sici(x).0)
}

/// Cosine integral `Ci(x) = γ + ln x + ∫_0^x (cos t − 1)/t dt` for `x > 0`.
pub fn cosine_integral(x: f64) -> Result<f64> {
    ensure_finite("cosine_integral", x)?;
    if x == 0.0 {
        return Err(Error::Divergence {
            function: "cosine_integral",
            value: x,
        });
    }
    if x < 0.0 {
        return Err(Error::Domain {
            function: "cosine_integral",
            value: x,
            expected: "x > 0",
        });
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(sici(x).1)
}

pub(crate) fn sici(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    if x <= SWITCH {
        let (si, cin) = series(x);
        return (si, EULER_GAMMA + libm::log(x) + cin);
    }
    // E1(ix) = −Ci(x) + i(Si(x) − π/2) by Lentz's continued fraction
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..100_000 {
        let im1 = (i - 1) as f64;
        let a = -im1 * im1;
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    h *= Complex64::new(libm::cos(x), -libm::sin(x));
    (FRAC_PI_2 + h.im, -h.re)
}

// Si(x) and Σ_{k≥1} (−1)^k x^{2k} / (2k (2k)!)
fn series(x: f64) -> (f64, f64) {
    let mut si = 0.0;
    let mut cin = 0.0;
    // t_m = (−1)^m x^{2m+1}/(2m+1)!
    let mut t = x;
    let mut m = 0.0;
    loop {
        si += t / (2.0 * m + 1.0);
        let tc = -t * x / (2.0 * m + 2.0);
        cin += tc / (2.0 * m + 2.0);
        t = tc * x / (2.0 * m + 3.0);
        m += 1.0;
        if t.abs() < 1e-18 && tc.abs() < 1e-18 {
            break;
        }
    }
    (si, cin)
}
