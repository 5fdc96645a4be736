use std::io::Write;

use lrd_spectra_core::asymptotics::{verify_with, TheoremId, TheoremReport, Verdict, VerifyConfig};
use lrd_spectra_core::functionals::var_ball_bruteforce;
use lrd_spectra_core::models::{ModelId, ModelSpec, Params, Quantity};
use lrd_spectra_core::Error;

use crate::config::GridSpec;
use crate::table::{self, number, Table};
use crate::{Failure, Method};

fn usage(e: Error) -> Failure {
    Failure::usage(e.to_string())
}

pub fn build_model(id: &str, params: &[String]) -> Result<ModelSpec, Failure> {
    let id: ModelId = id.parse().map_err(usage)?;
    let mut p = Params::new();
    for a in params {
        let (k, v) = Params::parse_assignment(a).map_err(usage)?;
        p.insert(&k, v);
    }
    ModelSpec::build(id, &p).map_err(usage)
}

fn parameter_text(m: &ModelSpec) -> String {
    if let Some(or) = m.or_construction() {
        return format!("n={} T={} eps={}", m.dimension, number(or.t), number(or.epsilon));
    }
    let mut parts = Vec::new();
    for &(name, default) in m.id.parameters() {
        let v = m.params.get(name).unwrap_or(default);
        parts.push(format!("{name}={v}"));
    }
    if parts.is_empty() {
        format!("n={}", m.dimension)
    } else {
        parts.join(" ")
    }
}

pub fn models_list(out: &mut dyn Write) -> Result<(), Failure> {
    let mut rows = vec![["id".to_string(), "parameters".into(), "theorems".into(), "source".into()]];
    for &id in &ModelId::ALL {
        let m = ModelSpec::build(id, &Params::new()).map_err(|e| Failure::numeric(e.to_string()))?;
        let theorems: Vec<&str> = m.expected.theorems.iter().map(|t| t.0.name()).collect();
        rows.push([id.name().to_string(), parameter_text(&m), theorems.join(","), m.provenance.to_string()]);
    }
    let widths: Vec<usize> = (0..3).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let io = |e: std::io::Error| Failure::io(e.to_string());
    for r in &rows {
        let line = format!("{:w0$}  {:w1$}  {:w2$}  {}", r[0], r[1], r[2], r[3], w0 = widths[0], w1 = widths[1], w2 = widths[2]);
        writeln!(out, "{}", line.trim_end()).map_err(io)?;
    }
    out.flush().map_err(io)
}

#[derive(Debug)]
pub struct EvalRequest<'a> {
    pub quantity: &'a str,
    pub grid: GridSpec,
    pub method: Method,
    pub seed: u64,
    pub samples: usize,
}

pub fn eval(m: &ModelSpec, req: &EvalRequest<'_>) -> Result<Table, Failure> {
    let q: Quantity = req.quantity.parse().map_err(usage)?;
    let points = req.grid.points();
    if req.method == Method::MonteCarlo {
        return monte_carlo(m, q, &points, req.seed, req.samples);
    }
    if req.method == Method::Closed && !m.has_closed_form(q) {
        return Err(Failure::usage(format!("no closed form of {} for {}", q.name(), m.id)));
    }
    let mut t = Table::new(["point", "value"]);
    for &x in &points {
        let r = match req.method {
            Method::Auto => m.eval(q, x),
            Method::Transform => m.eval_transform(q, x),
            _ => m.eval_closed(q, x),
        };
        let (v, flag) = match r {
            // the closed form may decline at single points
            Err(Error::Unavailable { .. }) if req.method == Method::Closed => (f64::NAN, Some("no-closed-form".into())),
            r => table::point(r)?,
        };
        t.push(vec![x, v], flag);
    }
    Ok(t)
}

fn monte_carlo(m: &ModelSpec, q: Quantity, points: &[f64], seed: u64, samples: usize) -> Result<Table, Failure> {
    if q != Quantity::BallVariance {
        return Err(Failure::usage("the Monte Carlo method only evaluates b_n"));
    }
    let c = m.covariance_model().map_err(usage)?;
    let mut t = Table::new(["point", "value", "std_error"]);
    for (i, &r) in points.iter().enumerate() {
        // one stream per grid index keeps rows independent of the grid length
        let est = var_ball_bruteforce(&c, r, samples, seed.wrapping_add(i as u64)).map_err(usage)?;
        t.push(vec![r, est.estimate, est.std_error], None);
    }
    Ok(t)
}

fn verify_one(m: &ModelSpec, theorem: TheoremId, cfg: &VerifyConfig) -> Result<TheoremReport, Failure> {
    verify_with(m, theorem, cfg).map_err(|e| match e {
        Error::NotApplicable { .. } | Error::Domain { .. } | Error::InvalidParameter { .. } => usage(e),
        e => Failure::numeric(e.to_string()),
    })
}

fn write_report(out: &mut dyn Write, m: &ModelSpec, rep: &TheoremReport) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::io(e.to_string());
    writeln!(out, "model: {} ({})", m.id, parameter_text(m)).map_err(io)?;
    writeln!(out, "theorem: {}", rep.theorem).map_err(io)?;
    writeln!(out, "verdict: {}", rep.verdict).map_err(io)?;
    writeln!(out, "note: {}", rep.note).map_err(io)?;
    let mut t = Table::new(["scale", "side_a", "side_b", "ratio"]);
    for i in 0..rep.scales.len() {
        let at = |v: &[f64]| v.get(i).copied().unwrap_or(f64::NAN);
        t.push(vec![rep.scales[i], at(&rep.side_a), at(&rep.side_b), at(&rep.ratio_trace)], None);
    }
    t.write(&mut *out)
}

pub fn verify(m: &ModelSpec, theorem: &str, tol: f64, grid: Option<&GridSpec>, out: &mut dyn Write) -> Result<(), Failure> {
    let theorems: Vec<TheoremId> = if theorem.eq_ignore_ascii_case("all") {
        m.expected.theorems.iter().map(|t| t.0).collect()
    } else {
        vec![theorem.parse().map_err(usage)?]
    };
    let cfg = VerifyConfig {
        scales: grid.map(GridSpec::points),
        tol,
    };
    let mut inconclusive = Vec::new();
    for (i, &th) in theorems.iter().enumerate() {
        let rep = verify_one(m, th, &cfg)?;
        if i > 0 {
            writeln!(out).map_err(|e| Failure::io(e.to_string()))?;
        }
        write_report(out, m, &rep)?;
        if rep.verdict == Verdict::Inconclusive {
            inconclusive.push(th.name());
        }
    }
    out.flush().map_err(|e| Failure::io(e.to_string()))?;
    if inconclusive.is_empty() {
        Ok(())
    } else {
        Err(Failure::inconclusive(format!("inconclusive: {}", inconclusive.join(", "))))
    }
}
