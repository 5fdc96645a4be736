use std::io::Write;
use std::path::Path;

use lrd_spectra_core::models::{ModelSpec, Quantity};

use crate::commands::build_model;
use crate::config::{Defaults, FigureKind, FigureSpec, GridSpec};
use crate::table::{self, Table};
use crate::{sink, Failure};

fn grid(text: &str, id: &str) -> Result<Vec<f64>, Failure> {
    let g: GridSpec = text.parse().map_err(|e| Failure::usage(format!("figure {id}: {e}")))?;
    Ok(g.points())
}

fn scaled(v: f64, x: f64, power: f64) -> f64 {
    if power == 0.0 {
        v
    } else {
        v * x.powf(power)
    }
}

fn polar(m: &ModelSpec, q: Quantity, r: f64, theta: f64) -> lrd_spectra_core::Result<f64> {
    // the plots extend B evenly to θ ∈ (−π, π)
    m.eval_polar(q, r, theta.abs())
}

/// Data of one figure.
pub fn table(id: &str, f: &FigureSpec) -> Result<Table, Failure> {
    let params: Vec<String> = f.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let m = build_model(&f.model, &params)?;
    let q: Quantity = f.quantity.parse().map_err(|e: lrd_spectra_core::Error| Failure::usage(e.to_string()))?;
    let xs = grid(&f.grid, id)?;
    let want = match f.kind {
        FigureKind::Series | FigureKind::Loglog => 2,
        FigureKind::Polar => 3,
        FigureKind::Angles => 1 + f.angles.as_ref().map_or(0, Vec::len),
    };
    if f.columns.len() != want {
        return Err(Failure::usage(format!("figure {id}: expected {want} column names")));
    }
    let mut t = Table::new(f.columns.iter().cloned());
    match f.kind {
        FigureKind::Series => {
            for &x in &xs {
                let (v, flag) = table::point(m.eval(q, x))?;
                t.push(vec![x, scaled(v, x, f.power)], flag);
            }
        }
        FigureKind::Loglog => {
            for &x in &xs {
                let (v, mut flag) = table::point(m.eval(q, x))?;
                if v.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) && flag.is_none() {
                    flag = Some("nonpositive".into());
                }
                t.push(vec![x.ln(), v.ln()], flag);
            }
        }
        FigureKind::Polar => {
            let thetas = grid(
                f.thetas
                    .as_deref()
                    .ok_or_else(|| Failure::usage(format!("figure {id}: polar data needs `thetas`")))?,
                id,
            )?;
            for &r in &xs {
                for &th in &thetas {
                    let (v, flag) = table::point(polar(&m, q, r, th))?;
                    t.push(vec![r, th, scaled(v, r, f.power)], flag);
                }
            }
        }
        FigureKind::Angles => {
            let angles = f.angles.as_deref().unwrap_or_default();
            for &r in &xs {
                let mut row = vec![r];
                let mut flags = Vec::new();
                for &th in angles {
                    let (v, flag) = table::point(polar(&m, q, r, th))?;
                    row.push(scaled(v, r, f.power));
                    flags.extend(flag);
                }
                t.push(row, (!flags.is_empty()).then(|| flags.join(";")));
            }
        }
    }
    Ok(t)
}

pub fn run(defaults: &Defaults, id: &str, out: Option<&Path>) -> Result<(), Failure> {
    match id {
        "list" => {
            let mut w = sink(out)?;
            for fid in defaults.figure_ids() {
                writeln!(w, "{fid:4} {}", defaults.figures[fid].caption).map_err(|e| Failure::io(e.to_string()))?;
            }
            w.flush().map_err(|e| Failure::io(e.to_string()))
        }
        "all" => {
            let dir = out.ok_or_else(|| Failure::usage("`figure all` needs --out <directory>"))?;
            std::fs::create_dir_all(dir).map_err(|e| Failure::io(format!("cannot create {}: {e}", dir.display())))?;
            let mut flagged = 0;
            for fid in defaults.figure_ids() {
                let t = table(fid, &defaults.figures[fid])?;
                t.write(sink(Some(&dir.join(format!("fig_{fid}.csv"))))?)?;
                flagged += t.flagged();
            }
            if flagged > 0 {
                return Err(Failure::numeric(format!("{flagged} figure points did not converge")));
            }
            Ok(())
        }
        _ => {
            let f = defaults
                .figures
                .get(id)
                .ok_or_else(|| Failure::usage(format!("unknown figure `{id}` (see `figure list`)")))?;
            let t = table(id, f)?;
            t.write(sink(out)?)?;
            t.status()
        }
    }
}
