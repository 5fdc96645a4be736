//! Acceptance criteria, one line each: `criterion N: PASS|FAIL  <what>  (<evidence>, <seconds>)`.
//! Exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use lrd_spectra_core::asymptotics::{c1, c2, geometric_grid, matuszewska_indices, slow_variation_test, verify_theorem_pair, TheoremId, Verdict};
use lrd_spectra_core::directional::{check_theorem11, cov_from_directional};
use lrd_spectra_core::functionals::{var_ball, var_ball_bruteforce};
use lrd_spectra_core::models::{linnik_density_closed, linnik_density_integral, ModelId, ModelSpec, Params, Quantity};
use lrd_spectra_core::spectra::{spectrum_from_cov, CovarianceModel};
use lrd_spectra_core::specfun::gamma;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    what: &'static str,
    budget: Option<Duration>,
    check: fn() -> Outcome,
}

fn model(id: ModelId, params: &[(&str, f64)]) -> ModelSpec {
    let p = params.iter().fold(Params::new(), |p, &(k, v)| p.with(k, v));
    ModelSpec::build(id, &p).expect("catalog model")
}

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Smallest `max_i |v_i/c − 1|` over constants `c`, reached at `c = (max + min)/2`.
fn spread(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min) / (max + min)
}

fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let xy: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn bingham_identity() -> Outcome {
    let m = model(ModelId::ExpGamma, &[("n", 3.0), ("a", 1.0)]);
    let s = m.spectrum().ok_or("no spectrum")?;
    let mut worst = 0.0f64;
    for l in [1.0f64, 5.0, 20.0] {
        let exact = 6.0 - 6.0 * (-l).exp() * (1.0 + l + l * l / 2.0 + l.powi(3) / 6.0);
        worst = worst.max((s.truncated_moment(2.0, l).map_err(err)? - exact).abs());
    }
    let at50 = s.truncated_moment(2.0, 50.0).map_err(err)?;
    ensure(worst <= 1e-8, format!("identity error {worst:.2e}"))?;
    ensure((at50 / 6.0 - 1.0).abs() <= 1e-3, format!("moment at 50 is {at50}"))?;
    Ok(format!("max error {worst:.1e}, moment at 50 = {at50:.9}"))
}

fn tauberian_constant() -> Outcome {
    let c = c1(9, 2.0).map_err(err)?;
    ensure((c - 14.0).abs() <= 1e-12, format!("c1(9, 2) = {c}"))?;
    let m = model(ModelId::TruncatedQuadratic, &[("n", 9.0), ("a", 1.0)]);
    let r = 1e3;
    let r2b = r * r * m.eval(Quantity::Covariance, r).map_err(err)?;
    ensure((r2b / 14.0 - 1.0).abs() <= 1e-2, format!("r^2 B(1e3) = {r2b}"))?;
    for l in [1e-3, 0.1, 0.5, 1.0] {
        let g = m.eval(Quantity::Distribution, l).map_err(err)? / (l * l);
        ensure(g == 1.0, format!("G(lambda)/lambda^2 = {g} at {l}"))?;
    }
    let rep = verify_theorem_pair(&m, TheoremId::T3).map_err(err)?;
    ensure(rep.verdict == Verdict::Confirmed, format!("T3 verdict {}", rep.verdict))?;
    Ok(format!("c1 = {c}, r^2 B(1e3) = {r2b:.6}, T3 {}", rep.verdict))
}

fn cauchy_limit() -> Outcome {
    let m = model(ModelId::CauchyBessel, &[("n", 6.0), ("kappa", 4.0)]);
    let l = 1e-4;
    let limit = l * l * m.eval(Quantity::Density, l).map_err(err)?;
    let target = 1.0 / c2(6, 4.0).map_err(err)?;
    ensure((target - 1.0 / (16.0 * PI.powi(3))).abs() <= 1e-15, "1/c2(6, 4) differs from 1/(16 pi^3)".into())?;
    let rel = (limit / target - 1.0).abs();
    ensure(rel <= 5e-3, format!("lambda^2 g = {limit}, target {target}"))?;
    let pts: Vec<(f64, f64)> = geometric_grid(1e-4, 1e-2, 21)
        .map_err(err)?
        .into_iter()
        .map(|x| m.eval(Quantity::Density, x).map(|g| (x, g)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let slope = loglog_slope(&pts);
    ensure((slope + 2.0).abs() <= 0.02, format!("slope {slope}"))?;
    Ok(format!("lambda^2 g(1e-4) c2 - 1 = {rel:.1e}, slope {slope:.4}"))
}

fn linnik_closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for l in [0.1, 1.0, 5.0] {
        let closed = linnik_density_closed(l).map_err(err)?;
        let numeric = linnik_density_integral(3, 1.0, 2.0, l).map_err(err)?;
        worst = worst.max((closed - numeric).abs());
    }
    ensure(worst <= 1e-5, format!("closed vs integral {worst:.2e}"))?;
    let l = 1e-4;
    let pref = l * linnik_density_closed(l).map_err(err)?;
    // Γ((n − κν)/2)/(2^{κν} π^{n/2} Γ(κν/2)) at n = 3, κν = 2
    let limit = gamma(0.5).map_err(err)? / (4.0 * PI.powf(1.5) * gamma(1.0).map_err(err)?);
    let literal = gamma(1.0).map_err(err)? / (2.0 * PI.powf(1.5) * gamma(0.5).map_err(err)?);
    let rel = (pref / limit - 1.0).abs();
    ensure(rel <= 1e-2, format!("lambda g(1e-4) = {pref}, limit constant {limit}"))?;
    Ok(format!(
        "max |closed - integral| {worst:.1e}; lambda g(1e-4) = {pref:.6} vs 1/c2(3, 2) = {limit:.6} ({rel:.1e}); \
         the printed form Gamma(1)/(2 pi^1.5 Gamma(1/2)) = {literal:.6} is not that constant"
    ))
}

fn transform_round_trip() -> Outcome {
    let cov = CovarianceModel::new(
        3,
        Arc::new(|r: f64| if r == 0.0 { 1.0 } else { 2.0 * (1.0 - r.cos()) / (r * r) }),
    )
    .map_err(err)?;
    let mut worst = 0.0f64;
    for k in 1..=20 {
        let l = 0.15 * k as f64;
        let g = spectrum_from_cov(&cov, l).map_err(err)?;
        worst = worst.max((g - l.min(1.0).powi(2)).abs());
    }
    ensure(worst <= 1e-6, format!("G round trip error {worst:.2e}"))?;
    let m = model(ModelId::TruncatedQuadratic, &[("n", 3.0), ("a", 1.0)]);
    let s = m.spectrum().ok_or("no spectrum")?;
    let mut rel = 0.0f64;
    for r in [0.5, 1.0, 2.0, 5.0] {
        let closed = m.eval_closed(Quantity::BallVariance, r).map_err(err)?;
        rel = rel.max((var_ball(s, r).map_err(err)? / closed - 1.0).abs());
    }
    ensure(rel <= 1e-7, format!("b_3 relative error {rel:.2e}"))?;
    let r = 1e3;
    let lim = var_ball(s, r).map_err(err)? / r.powi(4);
    let target = 8.0 * PI * PI;
    ensure((lim / target - 1.0).abs() <= 1e-2, format!("b_3/r^4 = {lim}"))?;
    Ok(format!("G error {worst:.1e}, b_3 rel error {rel:.1e}, b_3(1e3)/r^4 / 8pi^2 = {:.5}", lim / target))
}

/// Slow-variation reports on windows of two decades ending at 1e3, 1e4, 1e5.
fn windows<F: Fn(f64) -> lrd_spectra_core::Result<f64>>(h: F, tol: f64) -> Result<Vec<(bool, f64)>, String> {
    [1e3, 1e4, 1e5]
        .iter()
        .map(|&top| {
            let grid = geometric_grid(top / 100.0, top, 21).map_err(err)?;
            let rep = slow_variation_test(&h, &[2.0, 3.0], &grid, tol).map_err(err)?;
            Ok((rep.pass, rep.max_deviation))
        })
        .collect()
}

fn oscillation_counterexamples() -> Outcome {
    // a failure persists when every window, however far out, deviates by more than 0.1
    let persists = |w: &[(bool, f64)]| w.iter().all(|&(pass, dev)| !pass && dev > 0.1);
    let smallest = |w: &[(bool, f64)]| w.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let ex4 = model(ModelId::TruncatedQuadratic, &[("n", 3.0), ("a", 1.0)]);
    let a = windows(|r| Ok(r * r * ex4.eval(Quantity::Covariance, r)?), 0.1)?;
    ensure(persists(&a), format!("r^2 B windows {a:?}"))?;
    let b = windows(|x: f64| Ok((-50.0 / x).exp() + (2.0 * x).sin().powi(2)), 0.1)?;
    ensure(persists(&b), format!("envelope windows {b:?}"))?;
    let ex5 = model(ModelId::SqrtOscillatory, &[]);
    let c = windows(|r| Ok(r.powf(-3.5) * ex5.eval(Quantity::SphereVariance, r)?), 0.02)?;
    let last = c[c.len() - 1];
    ensure(last.0, format!("r^-3.5 l_3 windows {c:?}"))?;
    Ok(format!(
        "window deviations: r^2 B >= {:.2}, envelope >= {:.2}, r^-3.5 l_3 at the largest scales {:.1e}",
        smallest(&a),
        smallest(&b),
        last.1
    ))
}

fn monte_carlo_oracle() -> Outcome {
    let mut parts = Vec::new();
    for (id, params) in [
        (ModelId::ExpGamma, vec![("n", 3.0), ("a", 1.0)]),
        (ModelId::TruncatedQuadratic, vec![("n", 3.0), ("a", 1.0)]),
        (ModelId::CauchyBessel, vec![("n", 6.0), ("kappa", 4.0)]),
    ] {
        let m = model(id, &params);
        let exact = var_ball(m.spectrum().ok_or("no spectrum")?, 1.0).map_err(err)?;
        let c = m.covariance_model().map_err(err)?;
        let est = var_ball_bruteforce(&c, 1.0, 1_000_000, 20240917).map_err(err)?;
        let z = (est.estimate - exact) / est.std_error;
        ensure(est.agrees_with(exact, 3.0), format!("{id}: {z:.2} standard errors"))?;
        parts.push(format!("{id} {z:+.2} se"));
    }
    Ok(parts.join(", "))
}

fn directional_ground_truth() -> Outcome {
    let m = model(ModelId::DirectionalExp, &[]);
    let d = m.directional().ok_or("not directional")?;
    let mut worst = 0.0f64;
    for i in 0..10 {
        let r = 0.25 + 1.5 * i as f64;
        for j in 0..5 {
            let th = PI * j as f64 / 4.0;
            let numeric = cov_from_directional(&d.density, r, th).map_err(err)?;
            // the numeric route carries the 4π of the unnormalized harmonics, as does the printed B
            let closed = (d.cov)(r, th);
            worst = worst.max((numeric - closed).abs() / closed.abs().max(1.0));
        }
    }
    ensure(worst <= 1e-4, format!("cov_from_directional error {worst:.2e}"))?;
    let thetas: Vec<f64> = (0..9).map(|j| PI * j as f64 / 8.0).collect();
    let r = 1e3;
    let a: Vec<f64> = thetas
        .iter()
        .map(|&t| Ok(r * r * m.eval_polar(Quantity::Covariance, r, t)? / (7.0 - 6.0 * t.cos().powi(2))))
        .collect::<Result<_, lrd_spectra_core::Error>>()
        .map_err(err)?;
    let rho = 1e-4;
    let b: Vec<f64> = thetas
        .iter()
        .map(|&t| Ok(rho * m.eval_polar(Quantity::Density, rho, t)? / (4.0 + 3.0 * t.cos().powi(2))))
        .collect::<Result<_, lrd_spectra_core::Error>>()
        .map_err(err)?;
    let (sa, sb) = (spread(&a), spread(&b));
    ensure(sa <= 1e-2, format!("r^2 B profile spread {sa:.2e}"))?;
    let level = a.iter().sum::<f64>() / a.len() as f64 / (4.0 * PI);
    ensure(sb <= 1e-2, format!("rho f profile spread {sb:.2e}"))?;
    let t = model(ModelId::DirectionalTruncated, &[]);
    let rep = check_theorem11(&t, 1e-2).map_err(err)?;
    ensure(
        rep.verdict == Verdict::FailedAsPredicted && rep.note.contains("side a settles: false"),
        format!("truncated T11: {} ({})", rep.verdict, rep.note),
    )?;
    Ok(format!(
        "dir1 error {worst:.1e}, profile spreads {sa:.1e} and {sb:.1e}, r^2 B level / 4pi = {level:.4}, truncated T11 {}",
        rep.verdict
    ))
}

fn or_construction() -> Outcome {
    let m = model(ModelId::OrConstruction, &[("n", 3.0)]);
    let or = m.or_construction().ok_or("no construction")?;
    let tt = or.t;
    let d = or.derivative_fn();
    let grid = geometric_grid(tt * tt, tt.powi(4), 41).map_err(err)?;
    let br = matuszewska_indices(|x| Ok(d(1.0 / x)), &[2.0, 4.0, 8.0], &grid, 1e6).map_err(err)?;
    ensure(
        br.bounded && br.lower.is_finite() && br.upper.is_finite() && br.lower <= 0.0 && br.upper >= 0.0,
        format!("bracket [{}, {}]", br.lower, br.upper),
    )?;
    let trace = or.ratio_trace(m.spectrum().ok_or("no spectrum")?, 2).map_err(err)?;
    let even_min = trace.even.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let odd_max = trace.odd.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    ensure(even_min >= trace.even_lower_bound, format!("even ratio {even_min} below {}", trace.even_lower_bound))?;
    ensure(odd_max <= trace.odd_upper_bound, format!("odd ratio {odd_max} above {}", trace.odd_upper_bound))?;
    let guaranteed = trace.even_lower_bound / trace.odd_upper_bound;
    let seen = even_min / odd_max;
    ensure(seen >= guaranteed, format!("separation {seen} below {guaranteed}"))?;
    Ok(format!(
        "bracket [{:.2}, {:.2}], even ratios >= {even_min:.4}, odd ratios <= {odd_max:.3e}, separation {seen:.3e} >= {guaranteed:.3e}",
        br.lower, br.upper
    ))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_lrd-spectra");
    let runs: [&[&str]; 4] = [
        &["eval", "--model", "cauchy_bessel", "--param", "n=6", "--param", "kappa=4", "--quantity", "g", "--grid", "log:1e-4:10:100"],
        &["eval", "--model", "truncated_quadratic", "--param", "n=3", "--param", "a=1", "--quantity", "b_n", "--grid", "lin:0.1:20:200"],
        &["eval", "--model", "exp_gamma", "--quantity", "b_n", "--grid", "lin:0.5:2:4", "--method", "monte-carlo", "--seed", "7", "--samples", "20000"],
        &["figure", "8d"],
    ];
    let mut bytes = 0;
    for args in runs {
        let once = || Command::new(bin).args(args).env_remove("LRD_SPECTRA_DEFAULTS").output().map_err(err);
        let (a, b) = (once()?, once()?);
        ensure(a.status.success() && b.status.success(), format!("{args:?} failed: {}", String::from_utf8_lossy(&a.stderr)))?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), format!("{args:?} differs between runs"))?;
        bytes += a.stdout.len();
    }
    Ok(format!("4 invocations repeated, {bytes} identical bytes"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, what: "gamma-spectrum second moment identity", budget: Some(Duration::from_secs(1)), check: bingham_identity },
        Criterion { id: 2, what: "c1(9, 2) = 14 and the n = 9 Tauberian pair", budget: Some(Duration::from_secs(5)), check: tauberian_constant },
        Criterion { id: 3, what: "Cauchy density limit and slope", budget: Some(Duration::from_secs(1)), check: cauchy_limit },
        Criterion { id: 4, what: "Linnik Si/Ci closed form and prefactor", budget: Some(Duration::from_secs(30)), check: linnik_closed_form },
        Criterion { id: 5, what: "transform round trip and b_3", budget: Some(Duration::from_secs(10)), check: transform_round_trip },
        Criterion { id: 6, what: "oscillation counterexamples", budget: Some(Duration::from_secs(10)), check: oscillation_counterexamples },
        Criterion { id: 7, what: "Monte Carlo ball variance oracle", budget: Some(Duration::from_secs(60)), check: monte_carlo_oracle },
        Criterion { id: 8, what: "directional ground truth", budget: Some(Duration::from_secs(60)), check: directional_ground_truth },
        Criterion { id: 9, what: "OR without slow variation", budget: Some(Duration::from_secs(120)), check: or_construction },
        Criterion { id: 10, what: "byte-identical CLI output", budget: None, check: determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let secs = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if secs > b => Err(format!("took {:.2} s, budget {} s", secs.as_secs_f64(), b.as_secs())),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!("criterion {:2}: {tag}  {}  ({detail}; {:.2} s)", c.id, c.what, secs.as_secs_f64());
        failed += outcome.is_err() as u32;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
