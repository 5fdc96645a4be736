#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use lrd_spectra_core::models::{
    catalog, linnik_density_closed, linnik_density_integral, ModelId, ModelSpec, Params, Prediction, Quantity,
};
use lrd_spectra_core::asymptotics::TheoremId;
use lrd_spectra_core::Error;

fn build(id: ModelId) -> ModelSpec {
    ModelSpec::build(id, &Params::new()).unwrap()
}

fn log_points(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| lo * (hi / lo).powf(i as f64 / (k - 1) as f64))
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Closed form against the other route where the closed form is defined:
/// `B`, `G` and `g` within `tol` absolute, `b_n` and `l_n` (which grow like
/// `r^{2n}`) within `tol/10` relative.
fn cross_check(m: &ModelSpec, q: Quantity, points: &[f64], tol: f64) -> usize {
    let mut checked = 0;
    for &x in points {
        let Ok(closed) = m.eval_closed(q, x) else { continue };
        let other = match m.eval_transform(q, x) {
            Ok(v) => v,
            // B ∼ r^{−1/2} is too slow for the density inversion
            Err(Error::IntegrabilityViolation { .. }) if m.id == ModelId::SqrtOscillatory && q == Quantity::Density => continue,
            Err(e) => panic!("{} {} at {x}: {e}", m.id, q.name()),
        };
        let ok = match q {
            Quantity::BallVariance | Quantity::SphereVariance => rel(other, closed) < 0.1 * tol,
            _ => (other - closed).abs() < tol,
        };
        assert!(
            ok,
            "{} {} at {x}: closed {closed}, transform {other}",
            m.id,
            q.name()
        );
        checked += 1;
    }
    checked
}

#[test]
fn catalog_lists_every_model_once() {
    let all = catalog().unwrap();
    assert_eq!(all.len(), 9);
    for (m, id) in all.iter().zip(ModelId::ALL) {
        assert_eq!(m.id, id);
        assert_eq!(id.name().parse::<ModelId>().unwrap(), id);
        assert!(!m.provenance.is_empty());
    }
    assert_eq!("generalized_linnik".parse::<ModelId>().unwrap(), ModelId::Linnik);
    assert!(matches!("nope".parse::<ModelId>(), Err(Error::UnknownModel(_))));
}

#[test]
fn parameters_are_validated() {
    let bad = Params::new().with("b", 1.0);
    assert!(matches!(ModelSpec::build(ModelId::ExpGamma, &bad), Err(Error::InvalidParameter { .. })));
    let neg = Params::new().with("a", -1.0);
    assert!(ModelSpec::build(ModelId::ExpGamma, &neg).is_err());
    let frac = Params::new().with("n", 3.5);
    assert!(ModelSpec::build(ModelId::TruncatedQuadratic, &frac).is_err());
    let kappa = Params::new().with("kappa", 2.5);
    assert!(ModelSpec::build(ModelId::Linnik, &kappa).is_err());
    assert!(Params::parse_assignment("a").is_err());
    assert!(Params::parse_assignment("a=x").is_err());
}

#[test]
fn closed_forms_match_transforms() {
    let radii = log_points(0.15, 25.0, 10);
    let freqs = log_points(0.05, 4.0, 10);
    for id in [
        ModelId::ExpGamma,
        ModelId::TruncatedQuadratic,
        ModelId::CauchyBessel,
        ModelId::Linnik,
        ModelId::PiecewiseOscillatory,
        ModelId::SqrtOscillatory,
    ] {
        let m = build(id);
        let mut n = cross_check(&m, Quantity::Covariance, &radii, 1e-6);
        n += cross_check(&m, Quantity::BallVariance, &radii, 1e-6);
        n += cross_check(&m, Quantity::SphereVariance, &log_points(1.0, 25.0, 10), 1e-6);
        n += cross_check(&m, Quantity::Distribution, &freqs, 1e-6);
        // the inversion converges like 1/|λ − a| next to the jump of g
        let away: Vec<f64> = freqs.iter().copied().filter(|l| (l - 1.0).abs() > 0.1).collect();
        n += cross_check(&m, Quantity::Density, if id == ModelId::TruncatedQuadratic { &away } else { &freqs }, 1e-6);
        assert!(n >= 20, "{id}: only {n} points checked");
    }
}

#[test]
fn truncated_quadratic_nine_dimensions() {
    let m = ModelSpec::build(ModelId::TruncatedQuadratic, &Params::new().with("n", 9.0).with("a", 2.0)).unwrap();
    cross_check(&m, Quantity::Covariance, &log_points(0.3, 30.0, 10), 1e-6);
    // the series below ar = 2 meets the printed form
    let below = m.eval_closed(Quantity::Covariance, 1.0 - 1e-12).unwrap();
    let a = 2.0f64;
    let x = 2.0f64;
    let r = 1.0f64;
    let printed = 14.0 * (x.powi(5) + 45.0 * x.cos() * x - 45.0 * x.sin() + 15.0 * x.sin() * x * x) / (a.powi(5) * r.powi(7));
    assert!(rel(below, printed) < 1e-10);
    assert_eq!(m.expected.prediction(TheoremId::T3), Some(Prediction::Holds));
    assert_eq!(m.expected.prediction(TheoremId::T2), None);
    assert!((m.expected.limit.unwrap() - 14.0).abs() < 1e-12);
}

#[test]
fn exp_gamma_near_origin() {
    let m = build(ModelId::ExpGamma);
    for r in [1e-3, 1e-2, 0.05] {
        let closed = m.eval_closed(Quantity::Covariance, r).unwrap();
        let spectral = m.eval_transform(Quantity::Covariance, r).unwrap();
        assert!(rel(spectral, closed) < 1e-9, "r = {r}");
        // 1 − B(r) ≈ r² at n = 3, a = 1
        assert!(((1.0 - closed) / (r * r) - 1.0).abs() < 2.0 * r * r);
    }
    assert_eq!(m.eval(Quantity::Covariance, 0.0).unwrap(), 1.0);
}

#[test]
fn piecewise_oscillatory_near_removable_points() {
    let m = build(ModelId::PiecewiseOscillatory);
    // the printed form declines at r = 1 and near 0; eval falls back
    assert!(m.eval_closed(Quantity::Covariance, 1.0).is_err());
    let at_one = m.eval(Quantity::Covariance, 1.0).unwrap();
    let left = m.eval_closed(Quantity::Covariance, 1.0 - 2e-3).unwrap();
    let right = m.eval_closed(Quantity::Covariance, 1.0 + 2e-3).unwrap();
    assert!(rel(at_one, 0.5 * (left + right)) < 1e-5);
    let g_total = 4.0 * PI * (1.5 + 1f64.cos() + 1f64.sin());
    assert!(rel(m.eval(Quantity::Distribution, 5.0).unwrap(), g_total) < 1e-14);
    assert!(rel(m.eval(Quantity::Covariance, 0.0).unwrap(), g_total) < 1e-9);
}

#[test]
fn declared_asymptotics() {
    let c = build(ModelId::CauchyBessel);
    assert_eq!(c.expected.alpha, Some(4.0));
    assert_eq!(c.expected.limit, Some(1.0));
    let s = build(ModelId::SqrtOscillatory);
    assert_eq!(s.expected.alpha, Some(0.5));
    assert_eq!(s.expected.limit, Some(3.0));
    assert_eq!(s.expected.prediction(TheoremId::T4), Some(Prediction::SideBFails));
    let p = build(ModelId::PiecewiseOscillatory);
    assert!(rel(p.expected.limit.unwrap(), 12.0 * PI) < 1e-15);
    let e = build(ModelId::ExpGamma);
    assert_eq!(e.expected.bingham_l0, Some(1.0));
    // no long-range dependence for κ ≥ n
    let short = ModelSpec::build(ModelId::CauchyBessel, &Params::new().with("kappa", 7.0)).unwrap();
    assert!(short.expected.alpha.is_none() && short.expected.theorems.is_empty());
}

#[test]
fn linnik_closed_density_matches_integral() {
    for l in [0.05, 0.3, 1.0, 4.0, 12.0, 30.0] {
        let a = linnik_density_closed(l).unwrap();
        let b = linnik_density_integral(3, 1.0, 2.0, l).unwrap();
        assert!(rel(a, b) < 1e-8, "lambda = {l}: {a} vs {b}");
    }
    // κ = 2 reduces to the Cauchy density with κ' = 2ν
    let lin = ModelSpec::build(ModelId::Linnik, &Params::new().with("kappa", 2.0).with("nu", 1.0)).unwrap();
    let cau = ModelSpec::build(ModelId::CauchyBessel, &Params::new().with("n", 3.0).with("kappa", 2.0)).unwrap();
    for l in [0.1, 1.0, 3.0] {
        let a = lin.eval(Quantity::Density, l).unwrap();
        let b = cau.eval(Quantity::Density, l).unwrap();
        assert!(rel(a, b) < 1e-14);
    }
}

#[test]
fn linnik_mass_is_one() {
    let m = build(ModelId::Linnik);
    let spec = m.spectrum().unwrap();
    assert_eq!(spec.total_mass(), 1.0);
    assert!(rel(spec.distribution(1e4).unwrap(), 1.0) < 1e-3);
}

#[test]
fn or_construction_tail_conditions() {
    let m = build(ModelId::OrConstruction);
    let c = m.or_construction().unwrap();
    assert!(rel(c.b_integral, 2.0 / 15.0) < 1e-10);
    assert!(c.delta1 < c.a_integral / 100.0 && c.delta2 < c.a_integral / 100.0);
    assert!(rel(c.epsilon, c.a_integral / (100.0 * c.b_integral)) < 1e-14);
    assert!(c.t > 200.0 && c.t < 300.0, "T = {}", c.t);
    assert!(c.delta1 + c.delta2 + c.b_integral * c.epsilon < c.a_integral);
    // explicit T and eps override the defaults
    let own = ModelSpec::build(ModelId::OrConstruction, &Params::new().with("T", 1e3).with("eps", 1e-3)).unwrap();
    assert_eq!(own.or_construction().unwrap().t, 1e3);
    assert!(ModelSpec::build(ModelId::OrConstruction, &Params::new().with("T", 1.5)).is_err());
}

#[test]
fn or_construction_derivative_levels() {
    let c = build(ModelId::OrConstruction).or_construction().unwrap().clone();
    let t = c.t;
    assert_eq!(c.derivative(2.0 / t), 0.0);
    assert_eq!(c.derivative(0.75 / t), 1.0);
    assert_eq!(c.derivative(0.25 / t), c.epsilon);
    assert_eq!(c.derivative(0.75 / t.powi(3)), 1.0);
    assert_eq!(c.derivative(0.75 / t.powi(2)), c.epsilon);
    // pieces and the pointwise form agree
    for p in c.pieces().iter().rev().take(6) {
        let mid = 0.5 * (p.lo + p.hi);
        let expect = match p.shape {
            lrd_spectra_core::spectra::PieceShape::Constant(v) => v,
            _ => unreachable!(),
        };
        assert_eq!(c.derivative(mid), expect);
    }
}

#[test]
fn quantities_parse() {
    for q in Quantity::ALL {
        assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
    }
    assert!("B".parse::<Quantity>().is_err());
}

#[test]
fn directional_models_evaluate_at_theta() {
    let m = ModelSpec::build(ModelId::DirectionalExp, &Params::new().with("theta", PI / 2.0)).unwrap();
    let v = m.eval(Quantity::Covariance, 0.0).unwrap();
    assert!(rel(v, 20.0 * PI) < 1e-14);
    assert!(m.eval(Quantity::Distribution, 1.0).is_err());
    let f = m.eval(Quantity::Density, 0.5).unwrap();
    let expect = 4.0 * (-0.5f64).exp() / (4.0 * PI * 0.5);
    assert!(rel(f, expect) < 1e-13);
}

#[test]
fn density_inversion_near_a_jump() {
    let m = build(ModelId::TruncatedQuadratic);
    let closed = m.eval_closed(Quantity::Density, 0.93).unwrap();
    let inverted = m.eval_transform(Quantity::Density, 0.93).unwrap();
    assert!((closed - inverted).abs() < 1e-5);
}

#[test]
fn slow_covariance_is_not_inverted_to_a_density() {
    let m = build(ModelId::SqrtOscillatory);
    assert!(matches!(
        m.eval_transform(Quantity::Density, 0.5),
        Err(Error::IntegrabilityViolation { .. })
    ));
}
