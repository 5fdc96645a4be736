use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::linnik::{cauchy_density, linnik_density_closed, linnik_density_integral};
use super::or_construction::OrConstruction;
use super::params::{invalid, Params};
use super::{ClosedFn, ClosedForms, DirectionalParts, Expected, ModelId, ModelSpec, Prediction};
use crate::asymptotics::{c1, TheoremId};
use crate::directional::DirectionalDensity;
use crate::error::Result;
use crate::specfun::{bessel_k_unchecked, gamma_unchecked, upper_incomplete_gamma};
use crate::spectra::{sphere_area, Piece, PieceShape, SpectralMeasure};
use crate::RealFn;

use Prediction::{Holds, SideAFails, SideBFails};
use TheoremId::*;

pub(super) fn build(id: ModelId, p: &Params) -> Result<ModelSpec> {
    match id {
        ModelId::ExpGamma => exp_gamma(p),
        ModelId::TruncatedQuadratic => truncated_quadratic(p),
        ModelId::CauchyBessel => cauchy_bessel(p),
        ModelId::Linnik => linnik(p),
        ModelId::PiecewiseOscillatory => piecewise_oscillatory(p),
        ModelId::SqrtOscillatory => sqrt_oscillatory(p),
        ModelId::OrConstruction => or_construction(p),
        ModelId::DirectionalExp => directional_exp(p),
        ModelId::DirectionalTruncated => directional_truncated(p),
    }
}

fn closed(f: impl Fn(f64) -> Option<f64> + Send + Sync + 'static) -> Option<ClosedFn> {
    Some(Arc::new(f))
}

fn expected(alpha: Option<f64>, law: &'static str) -> Expected {
    Expected {
        alpha,
        law,
        limit: None,
        theorems: Vec::new(),
        scales: vec![1e2, 1e3, 1e4],
        bingham_l0: None,
        s_profile: None,
        s_tilde_profile: None,
    }
}

fn spec(id: ModelId, n: u32, params: &Params, expected: Expected, provenance: &'static str) -> ModelSpec {
    ModelSpec {
        id,
        dimension: n,
        params: params.clone(),
        expected,
        provenance,
        closed: ClosedForms::default(),
        spectrum: None,
        directional: None,
        or_construction: None,
    }
}

/// Theorems of the ℒ and OR families that apply to `G(λ) ∼ λ^α L(1/λ)` in
/// dimension `n`, all with prediction `Holds`.
fn standard_theorems(n: u32, alpha: f64, with_density: bool) -> Vec<(TheoremId, Prediction)> {
    let nf = n as f64;
    let mut t = Vec::new();
    if alpha > 0.0 && alpha < nf {
        if alpha > 0.5 * (nf - 3.0) {
            t.push((T2, Holds));
        }
        t.push((T3, Holds));
        if with_density {
            t.push((T4, Holds));
        }
        t.push((T6Ball, Holds));
        if n >= 2 && alpha < nf - 1.0 {
            t.push((T6Sphere, Holds));
        }
        t.push((OrBall, Holds));
        if alpha < nf - 2.0 {
            t.push((OrSphere, Holds));
        }
        if with_density {
            t.push((OrDensity, Holds));
        }
    }
    t
}

fn set_prediction(t: &mut [(TheoremId, Prediction)], id: TheoremId, p: Prediction) {
    if let Some(e) = t.iter_mut().find(|e| e.0 == id) {
        e.1 = p;
    }
}

fn exp_gamma(p: &Params) -> Result<ModelSpec> {
    let n = p.dimension(3, 3)?;
    let a = p.positive("a", 1.0)?;
    let nf = n as f64;
    let norm = libm::pow(a, nf - 1.0) / gamma_unchecked(nf - 1.0);
    let gp: RealFn = Arc::new(move |l: f64| norm * libm::pow(l, nf - 2.0) * libm::exp(-a * l));
    let mut e = expected(None, "short-range: 1 - B(r) ~ r^2 (n-1)/(2a^2) at the origin");
    e.bingham_l0 = Some((nf - 1.0) / (2.0 * a * a));
    e.theorems = vec![(BinghamGamma2, Holds)];
    e.scales = vec![20.0, 50.0, 100.0];
    let mut m = spec(
        ModelId::ExpGamma,
        n,
        p,
        e,
        "example after Bingham's theorem (gamma-type spectral derivative, \"The corresponding covariance function is\")",
    );
    m.closed.cov = closed(move |r| Some(libm::pow(a, nf - 1.0) / libm::pow(r * r + a * a, 0.5 * (nf - 1.0))));
    m.closed.distribution = closed(move |l| {
        let g = gamma_unchecked(nf - 1.0);
        upper_incomplete_gamma(nf - 1.0, a * l).ok().map(|u| 1.0 - u / g)
    });
    let omega = sphere_area(n);
    m.closed.density = closed(move |l| (l > 0.0).then(|| norm * libm::exp(-a * l) / (omega * l)));
    m.spectrum = Some(SpectralMeasure::from_pieces(
        n,
        vec![Piece {
            lo: 0.0,
            hi: f64::INFINITY,
            shape: PieceShape::Density(gp),
        }],
    )?);
    Ok(m)
}

/// `B(r) = a² Σ_k (−1)^k Γ(n/2) (ar/2)^{2k} / (k! Γ(n/2 + k) (k + 1))` for
/// `G(λ) = min(λ, a)²`.
fn truncated_quadratic_series(n: u32, a: f64, r: f64) -> f64 {
    let h = 0.5 * n as f64;
    let x = 0.25 * a * a * r * r;
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 0..60 {
        let kf = k as f64;
        sum += term / (kf + 1.0);
        term *= -x / ((kf + 1.0) * (h + kf));
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    a * a * sum
}

fn truncated_quadratic(p: &Params) -> Result<ModelSpec> {
    let n = p.dimension(3, 3)?;
    let a = p.positive("a", 1.0)?;
    let nf = n as f64;
    let mut e = expected(Some(2.0), "G(lambda) = lambda^2 near 0, so L is the constant c1(n, 2)");
    e.limit = Some(c1(n, 2.0)?);
    e.theorems = standard_theorems(n, 2.0, true);
    if n == 3 {
        for t in [T2, T3, T4] {
            set_prediction(&mut e.theorems, t, SideAFails);
        }
    }
    let provenance = if n == 3 {
        "counterexample with G = min(lambda^2, a^2) in three dimensions (\"are not equivalent for (n-3)/2 < alpha\")"
    } else {
        "example under the Tauberian theorem for 0 < alpha < (n-3)/2 (\"the statements ... are satisfied\")"
    };
    let mut m = spec(ModelId::TruncatedQuadratic, n, p, e, provenance);
    m.closed.cov = match n {
        3 => closed(move |r| {
            Some(if r == 0.0 {
                a * a
            } else {
                let s = libm::sin(0.5 * a * r);
                4.0 * s * s / (r * r)
            })
        }),
        9 => closed(move |r| {
            let x = a * r;
            Some(if x < 2.0 {
                truncated_quadratic_series(9, a, r)
            } else {
                let (s, c) = (libm::sin(x), libm::cos(x));
                14.0 * (libm::pow(x, 5.0) + 45.0 * c * x - 45.0 * s + 15.0 * s * x * x) / (libm::pow(a, 5.0) * libm::pow(r, 7.0))
            })
        }),
        _ => closed(move |r| (a * r < 2.0).then(|| truncated_quadratic_series(n, a, r))),
    };
    m.closed.distribution = closed(move |l| Some(libm::pow(l.min(a), 2.0)));
    let omega = sphere_area(n);
    m.closed.density = closed(move |l| (l > 0.0).then(|| if l < a { 2.0 * libm::pow(l, 2.0 - nf) / omega } else { 0.0 }));
    if n == 3 {
        m.closed.ball = closed(move |r| {
            let x = a * r;
            // the bracket cancels to O(x⁶) near 0
            (x >= 0.1).then(|| {
                4.0 * PI * PI / libm::pow(a, 4.0)
                    * (2.0 * libm::pow(x, 4.0) - 2.0 * x * x + 2.0 * libm::sin(2.0 * x) * x - 1.0 + libm::cos(2.0 * x))
            })
        });
    }
    m.spectrum = Some(SpectralMeasure::from_distribution(
        n,
        Arc::new(move |l: f64| libm::pow(l.min(a), 2.0)),
        a * a,
        Some(a),
        vec![],
    )?);
    Ok(m)
}

fn cauchy_bessel(p: &Params) -> Result<ModelSpec> {
    let n = p.dimension(6, 1)?;
    let kappa = p.positive("kappa", 4.0)?;
    let lrd = kappa < n as f64;
    let mut e = expected(lrd.then_some(kappa), "r^kappa B(r) -> 1, L constant");
    if lrd {
        e.limit = Some(1.0);
        e.theorems = standard_theorems(n, kappa, true);
    }
    // l_n/r^{2n-α-2} is still 2% off its limit at r = 1e2
    e.scales = vec![1e3, 1e4, 1e5];
    let mut m = spec(
        ModelId::CauchyBessel,
        n,
        p,
        e,
        "Bessel (Cauchy) covariance example (\"known as the Cauchy covariance function\")",
    );
    m.closed.cov = closed(move |r| Some(libm::pow(1.0 + r * r, -0.5 * kappa)));
    let g: RealFn = Arc::new(move |l: f64| cauchy_density(n, kappa, l));
    let gc = g.clone();
    m.closed.density = closed(move |l| (l > 0.0).then(|| gc(l)));
    m.spectrum = Some(SpectralMeasure::from_radial_density(n, g, None, vec![1.0])?);
    Ok(m)
}

fn linnik(p: &Params) -> Result<ModelSpec> {
    let n = p.dimension(3, 1)?;
    let kappa = p.positive("kappa", 1.0)?;
    let nu = p.positive("nu", 2.0)?;
    if kappa > 2.0 {
        return Err(invalid("kappa", "must lie in (0, 2]"));
    }
    let nf = n as f64;
    let alpha = kappa * nu;
    let lrd = alpha < nf;
    let mut e = expected(lrd.then_some(alpha), "r^(kappa nu) B(r) -> 1, L constant");
    if lrd {
        e.limit = Some(1.0);
        e.theorems = standard_theorems(n, alpha, true);
    }
    e.scales = vec![1e4, 1e5, 1e6];
    let mut m = spec(
        ModelId::Linnik,
        n,
        p,
        e,
        "Linnik and generalized Linnik covariance example (\"characteristic function of the Linnik distribution\")",
    );
    m.closed.cov = closed(move |r| Some(libm::pow(1.0 + libm::pow(r, kappa), -nu)));
    let special = n == 3 && kappa == 1.0 && nu == 2.0;
    let g: RealFn = if kappa == 2.0 {
        Arc::new(move |l: f64| cauchy_density(n, 2.0 * nu, l))
    } else if special {
        // the Si/Ci form cancels badly for large λ
        Arc::new(move |l: f64| {
            if l <= 30.0 {
                linnik_density_closed(l).unwrap_or(f64::NAN)
            } else {
                linnik_density_integral(3, 1.0, 2.0, l).unwrap_or(f64::NAN)
            }
        })
    } else {
        Arc::new(move |l: f64| linnik_density_integral(n, kappa, nu, l).unwrap_or(f64::NAN))
    };
    let gc = g.clone();
    m.closed.density = closed(move |l| (l > 0.0).then(|| gc(l)));
    // B(0) = 1 is known exactly; integrating the nested quadrature for the
    // mass would only add error
    m.spectrum = Some(SpectralMeasure::from_radial_density_with_mass(n, g, 1.0, None, vec![1.0])?);
    Ok(m)
}

fn piecewise_oscillatory(p: &Params) -> Result<ModelSpec> {
    let mut e = expected(Some(2.0), "lambda g(lambda) -> 3, L = 12 pi; r^2 B(r) oscillates");
    e.limit = Some(12.0 * PI);
    e.theorems = standard_theorems(3, 2.0, true);
    for t in [T2, T3, T4] {
        set_prediction(&mut e.theorems, t, SideAFails);
    }
    let mut m = spec(
        ModelId::PiecewiseOscillatory,
        3,
        p,
        e,
        "piecewise density (2 + cos lambda)/lambda on (0, 1], 1/lambda on (1, 2] (\"Then the correlation function of the field\")",
    );
    m.closed.cov = closed(|r| {
        // removable singularity at r = 1 and cancellation near 0
        if r < 0.1 || (r - 1.0).abs() < 1e-3 {
            return None;
        }
        let (s, c) = (libm::sin(r), libm::cos(r));
        let (s1, c1) = (libm::sin(1.0), libm::cos(1.0));
        Some(
            4.0 * PI / (r * r * (r * r - 1.0))
                * ((4.0 - c - c * c1 - 2.0 * c * c) * r * r - r * s * s1 - 3.0 + c + 2.0 * c * c),
        )
    });
    m.closed.distribution = closed(|l| {
        let inner = |x: f64| {
            // cos x + x sin x − 1
            if x < 0.01 {
                let x2 = x * x;
                x2 * (0.5 - x2 / 8.0 + x2 * x2 / 144.0)
            } else {
                libm::cos(x) + x * libm::sin(x) - 1.0
            }
        };
        let g1 = 4.0 * PI * (1.0 + inner(1.0));
        Some(if l <= 1.0 {
            4.0 * PI * (l * l + inner(l))
        } else {
            g1 + 2.0 * PI * (l.min(2.0) * l.min(2.0) - 1.0)
        })
    });
    m.closed.density = closed(|l| {
        (l > 0.0).then(|| {
            if l <= 1.0 {
                (2.0 + libm::cos(l)) / l
            } else if l <= 2.0 {
                1.0 / l
            } else {
                0.0
            }
        })
    });
    m.spectrum = Some(SpectralMeasure::from_pieces(
        3,
        vec![
            Piece {
                lo: 0.0,
                hi: 1.0,
                shape: PieceShape::Density(Arc::new(|l: f64| 4.0 * PI * l * (2.0 + libm::cos(l)))),
            },
            Piece {
                lo: 1.0,
                hi: 2.0,
                shape: PieceShape::Density(Arc::new(|l: f64| 4.0 * PI * l)),
            },
        ],
    )?);
    Ok(m)
}

fn sqrt_oscillatory(p: &Params) -> Result<ModelSpec> {
    let mut e = expected(Some(0.5), "r^(1/2) B(r) -> 3; the density envelope oscillates at the origin");
    e.limit = Some(3.0);
    e.theorems = standard_theorems(3, 0.5, true);
    set_prediction(&mut e.theorems, T4, SideBFails);
    e.scales = vec![1e4, 1e5, 1e6];
    let mut m = spec(
        ModelId::SqrtOscillatory,
        3,
        p,
        e,
        "density (e^{-50 lambda} + sin^2(2/lambda))/((2 pi)^{3/2} lambda^{5/2}) (\"there does not exist alpha\")",
    );
    m.closed.cov = closed(|r| {
        if r < 1e-4 {
            return None;
        }
        let s = libm::sqrt(r);
        Some(
            (16.0 * libm::sqrt(libm::sqrt(2500.0 + r * r) - 50.0) + 8.0 * s + libm::exp(-4.0 * s)
                - libm::sin(4.0 * s)
                - libm::cos(4.0 * s))
                / (8.0 * r),
        )
    });
    m.closed.sphere = closed(|r| {
        if r < 1.0 {
            return None;
        }
        let q = libm::sqrt(2.0 * r);
        let w = libm::sqrt(r * r + 625.0);
        let ex = libm::exp(-4.0 * q);
        Some(
            PI * PI * r * r / 24.0
                * (128006.0 - (3.0 + 12.0 * q) * libm::sin(4.0 * q) + 256.0 * libm::sqrt(2.0) * libm::pow(r, 1.5)
                    - 12.0 * q * ex
                    + (12.0 * q - 3.0) * libm::cos(4.0 * q)
                    - 3.0 * ex
                    + 512.0 * libm::sqrt(50.0 + 2.0 * w) * (w - 50.0)),
        )
    });
    let norm = libm::pow(2.0 * PI, -1.5);
    m.closed.density = closed(move |l| {
        (l > 0.0).then(|| {
            let s = libm::sin(2.0 / l);
            norm * (libm::exp(-50.0 * l) + s * s) / libm::pow(l, 2.5)
        })
    });
    // G′ = 4πλ² g = c (e^{−50λ} + sin²(2/λ))/√λ, with sin² = (1 − cos(4/λ))/2
    // split off on (0, 1] for the oscillatory quadrature
    let c = 4.0 * PI * norm;
    m.spectrum = Some(SpectralMeasure::from_pieces(
        3,
        vec![
            Piece {
                lo: 0.0,
                hi: 1.0,
                shape: PieceShape::ReciprocalOscillation {
                    base: Arc::new(move |l: f64| c * (libm::exp(-50.0 * l) + 0.5) / libm::sqrt(l)),
                    amplitude: Arc::new(move |l: f64| -0.5 * c / libm::sqrt(l)),
                    frequency: 4.0,
                },
            },
            Piece {
                lo: 1.0,
                hi: f64::INFINITY,
                shape: PieceShape::Density(Arc::new(move |l: f64| {
                    let s = libm::sin(2.0 / l);
                    c * (libm::exp(-50.0 * l) + s * s) / libm::sqrt(l)
                })),
            },
        ],
    )?);
    Ok(m)
}

fn or_construction(p: &Params) -> Result<ModelSpec> {
    let n = p.dimension(3, 1)?;
    let c = OrConstruction::new(n, p.get("T"), p.get("eps"))?;
    let mut e = expected(None, "G'(1/u) in OR(0, 0) but not slowly varying");
    e.theorems = vec![(OrBall, Holds), (OrDensity, Holds)];
    if n >= 4 {
        e.theorems.push((OrSphere, Holds));
    }
    e.scales = super::super::asymptotics::geometric_grid(c.t, libm::pow(c.t, 4.0), 13)?;
    let mut m = spec(
        ModelId::OrConstruction,
        n,
        p,
        e,
        "OR-but-not-L construction (\"determined by its derivative\")",
    );
    let measure = c.measure()?;
    let mc = measure.clone();
    m.closed.distribution = closed(move |l| mc.distribution(l).ok());
    let d = c.derivative_fn();
    let omega = sphere_area(n);
    let nf = n as f64;
    m.closed.density = closed(move |l| (l > 0.0).then(|| d(l) / (omega * libm::pow(l, nf - 1.0))));
    m.spectrum = Some(measure);
    m.or_construction = Some(c);
    Ok(m)
}

fn directional_expected(truncated: bool) -> Expected {
    let mut e = expected(Some(2.0), "L constant; S(theta) = 7 - 6 cos^2 theta, S~ proportional to 4 + 3 cos^2 theta");
    e.theorems = vec![(T11, if truncated { SideAFails } else { Holds })];
    // the 1/r correction of the closed form is still 1% at r = 1e3
    e.scales = vec![1e4, 1e5, 1e6];
    e.s_profile = Some(Arc::new(|t: f64| 7.0 - 6.0 * cos2(t)));
    e.s_tilde_profile = Some(Arc::new(|t: f64| 4.0 + 3.0 * cos2(t)));
    e
}

fn directional_exp(p: &Params) -> Result<ModelSpec> {
    let mut m = spec(
        ModelId::DirectionalExp,
        3,
        p,
        directional_expected(false),
        "radially directional example with K_{1/2} radial profile (\"Finally we obtain\")",
    );
    m.expected.limit = None;
    let radial: RealFn = Arc::new(|rho: f64| {
        bessel_k_unchecked(0.5, rho) / libm::sqrt(8.0 * PI * PI * PI * rho)
    });
    let density = DirectionalDensity::new(vec![(0, 5.0), (2, 2.0)], radial.clone(), None)?;
    let cov = Arc::new(|r: f64, theta: f64| {
        let c2 = cos2(theta);
        if r == 0.0 {
            return 20.0 * PI;
        }
        let at = libm::atan(r);
        4.0 * PI / ((1.0 + r * r) * r * r * r)
            * (r * r * r * (7.0 - 6.0 * c2) + 3.0 * r * r * (3.0 * c2 - 1.0) * at + 3.0 * r * (1.0 - 3.0 * c2)
                + 3.0 * (3.0 * c2 - 1.0) * at)
    });
    let f = Arc::new(move |rho: f64, theta: f64| (4.0 + 3.0 * cos2(theta)) * radial(rho));
    m.directional = Some(DirectionalParts {
        density,
        cov,
        spectral_density: f,
        small_r: 0.2,
    });
    Ok(m)
}

fn directional_truncated(p: &Params) -> Result<ModelSpec> {
    let mut m = spec(
        ModelId::DirectionalTruncated,
        3,
        p,
        directional_expected(true),
        "truncated directional density on rho in (0, 1] (\"consider a new spectral density\")",
    );
    let norm = 1.0 / libm::sqrt(8.0 * PI * PI * PI);
    let radial: RealFn = Arc::new(move |rho: f64| if rho > 0.0 && rho <= 1.0 { norm / rho } else { 0.0 });
    let density = DirectionalDensity::new(vec![(0, 5.0), (2, 2.0)], radial.clone(), Some(1.0))?;
    let cov = Arc::new(|r: f64, theta: f64| {
        let c2 = cos2(theta);
        let k = libm::pow(2.0, 2.5) * libm::sqrt(PI);
        if r == 0.0 {
            return 2.5 * k;
        }
        let (s, c) = (libm::sin(r), libm::cos(r));
        k / (r * r * r) * (r * (7.0 - 4.0 * c - 3.0 * c2 * (2.0 + c)) + 3.0 * (3.0 * c2 - 1.0) * s)
    });
    let f = Arc::new(move |rho: f64, theta: f64| (4.0 + 3.0 * cos2(theta)) * radial(rho));
    m.directional = Some(DirectionalParts {
        density,
        cov,
        spectral_density: f,
        small_r: 0.2,
    });
    Ok(m)
}

fn cos2(theta: f64) -> f64 {
    let c = libm::cos(theta);
    c * c
}
