use crate::error::{ensure_finite, Error, Result};

/// Largest argument for which `Γ(x)` is representable as `f64`.
const MAX_ARG: f64 = 171.624_376_956_302_7;

/// Euler gamma function.
///
/// ```
/// # use lrd_spectra_core::specfun::gamma;
/// assert!((gamma(1.5).unwrap() - core::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);
/// assert!(gamma(-2.0).is_err());
/// ```
pub fn gamma(x: f64) -> Result<f64> {
    ensure_finite("gamma", x)?;
    if x <= 0.0 && x == libm::floor(x) {
        return Err(Error::Pole {
            function: "gamma",
            value: x,
        });
    }
    if x > MAX_ARG {
        return Err(Error::Overflow {
            function: "gamma",
            value: x,
        });
    }
    Ok(libm::tgamma(x))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    ensure_finite("ln_gamma", x)?;
    if x <= 0.0 {
        return Err(Error::Domain {
            function: "ln_gamma",
            value: x,
            expected: "(0, inf)",
        });
    }
    Ok(libm::lgamma(x))
}

/// Gamma without argument checks, for internal constants known to be in range.
#[inline]
pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    libm::tgamma(x)
}

// Taylor coefficients of 1/Γ(1+x) about 0.
const RGAMMA: [f64; 25] = [
    1.0,
    0.577_215_664_901_532_866,
    -0.655_878_071_520_253_902,
    -0.042_002_635_034_095_237_0,
    0.166_538_611_382_291_479,
    -0.042_197_734_555_544_333_4,
    -0.009_621_971_527_876_973_03,
    0.007_218_943_246_663_099_90,
    -0.001_165_167_591_859_065_17,
    -2.152_416_741_149_509_75e-4,
    1.280_502_823_881_161_96e-4,
    -2.013_485_478_078_823_87e-5,
    -1.250_493_482_142_670_63e-6,
    1.133_027_231_981_695_93e-6,
    -2.056_338_416_977_607_07e-7,
    6.116_095_104_481_416_09e-9,
    5.002_007_644_469_222_95e-9,
    -1.181_274_570_487_020_04e-9,
    1.043_426_711_691_100_54e-10,
    7.782_263_439_905_070_81e-12,
    -3.696_805_618_642_205_98e-12,
    5.100_370_287_454_475_75e-13,
    -2.058_326_053_566_506_64e-14,
    -5.348_122_539_423_017_82e-15,
    1.226_778_628_238_260_84e-15,
];

/// For `|μ| ≤ 1/2` returns `(γ1, γ2, 1/Γ(1+μ), 1/Γ(1−μ))` where
/// `γ1 = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ)` and `γ2 = (1/Γ(1−μ) + 1/Γ(1+μ))/2`.
pub(crate) fn rgamma1pm1_pair(mu: f64) -> (f64, f64, f64, f64) {
    let m2 = mu * mu;
    // even part Σ c_{2j} μ^{2j}, odd part Σ c_{2j+1} μ^{2j}
    let mut even = 0.0;
    let mut odd = 0.0;
    for (j, c) in RGAMMA.iter().enumerate().rev() {
        if j % 2 == 0 {
            even = even * m2 + c;
        } else {
            odd = odd * m2 + c;
        }
    }
    (-odd, even, even + mu * odd, even - mu * odd)
}
