use alloc::vec::Vec;

use super::{Integral, Tolerance};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss 7-point weights at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const DEFAULT_LIMIT: usize = 400;

/// One 15-point Kronrod rule with QUADPACK's error heuristic.
pub(crate) fn gk15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for jj in 0..7 {
        let dx = half * XGK[jj];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jj] = f1;
        fv2[jj] = f2;
        res_k += WGK[jj] * (f1 + f2);
        res_abs += WGK[jj] * (f1.abs() + f2.abs());
        if jj % 2 == 1 {
            res_g += WG[jj / 2] * (f1 + f2);
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for jj in 0..7 {
        res_asc += WGK[jj] * ((fv1[jj] - mean).abs() + (fv2[jj] - mean).abs());
    }
    let result = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * libm::pow(200.0 * err / res_asc, 1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !result.is_finite() {
        err = f64::INFINITY;
    }
    (result, err)
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// ```
/// # use lrd_spectra_core::quad::{integrate, Tolerance};
/// let r = integrate(|x: f64| x.exp(), 0.0, 1.0, Tolerance::default());
/// assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-12);
/// ```
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Integral {
    integrate_points(f, &[a, b], tol)
}

/// Adaptive integration over `[points[0], points[last]]` with the interior
/// points used as initial breakpoints.
pub fn integrate_points<F: Fn(f64) -> f64>(f: F, points: &[f64], tol: Tolerance) -> Integral {
    adaptive(&f, points, tol, DEFAULT_LIMIT)
}

/// Integral over `[a, ∞)` through the map `t = a + (1 − s)/s`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, tol: Tolerance) -> Integral {
    let g = |s: f64| {
        let t = a + (1.0 - s) / s;
        let v = f(t);
        if v == 0.0 {
            0.0
        } else {
            v / (s * s)
        }
    };
    adaptive(&g, &[0.0, 1.0], tol, DEFAULT_LIMIT)
}

pub(crate) fn adaptive<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    points: &[f64],
    tol: Tolerance,
    limit: usize,
) -> Integral {
    let mut segs: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(limit + points.len());
    for w in points.windows(2) {
        if w[1] > w[0] {
            let (v, e) = gk15(f, w[0], w[1]);
            segs.push((w[0], w[1], v, e));
        }
    }
    if segs.is_empty() {
        return Integral::exact(0.0);
    }
    loop {
        let value: f64 = segs.iter().map(|s| s.2).sum();
        let error: f64 = segs.iter().map(|s| s.3).sum();
        if error <= tol.target(value) {
            return Integral {
                value,
                error,
                converged: true,
            };
        }
        let (idx, worst) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, s)| (i, *s))
            .unwrap_or((0, segs[0]));
        let (a, b) = (worst.0, worst.1);
        let mid = 0.5 * (a + b);
        let too_small = (b - a).abs() <= 1e3 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300);
        if segs.len() >= limit || too_small || !error.is_finite() && segs.len() > limit / 2 {
            return Integral {
                value,
                error,
                converged: false,
            };
        }
        let (v1, e1) = gk15(f, a, mid);
        let (v2, e2) = gk15(f, mid, b);
        segs[idx] = (a, mid, v1, e1);
        segs.push((mid, b, v2, e2));
    }
}
