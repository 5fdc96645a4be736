use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::Failure;

const BUILTIN: &str = include_str!("../defaults.toml");

/// Environment variable naming a replacement defaults file.
pub const DEFAULTS_ENV: &str = "LRD_SPECTRA_DEFAULTS";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    pub version: u32,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
    #[serde(default)]
    pub figures: BTreeMap<String, FigureSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureKind {
    Series,
    Loglog,
    Polar,
    Angles,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigureSpec {
    pub caption: String,
    pub model: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    pub quantity: String,
    pub kind: FigureKind,
    #[serde(default)]
    pub power: f64,
    pub grid: String,
    pub thetas: Option<String>,
    pub angles: Option<Vec<f64>>,
    pub columns: Vec<String>,
}

impl Defaults {
    /// The file named by [`DEFAULTS_ENV`], or the built-in defaults.
    pub fn load() -> Result<Self, Failure> {
        match std::env::var_os(DEFAULTS_ENV) {
            Some(path) => Self::from_file(Path::new(&path)),
            None => Self::parse(BUILTIN, "built-in defaults"),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read defaults file {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    fn parse(text: &str, origin: &str) -> Result<Self, Failure> {
        let d: Defaults = toml::from_str(text).map_err(|e| Failure::usage(format!("{origin}: {e}")))?;
        if d.version != 1 {
            return Err(Failure::usage(format!("{origin}: unsupported defaults version {}", d.version)));
        }
        if !(d.tol > 0.0 && d.tol < 1.0) {
            return Err(Failure::usage(format!("{origin}: tol must lie in (0, 1)")));
        }
        Ok(d)
    }

    /// Figure ids in numeric order (`1a`, …, `9d`, `10a`, …).
    pub fn figure_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.figures.keys().map(String::as_str).collect();
        ids.sort_by_key(|id| {
            let digits = id.bytes().take_while(u8::is_ascii_digit).count();
            (id[..digits].parse::<u32>().unwrap_or(u32::MAX), id[digits..].to_string())
        });
        ids
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `<spacing>:<min>:<max>:<count>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub spacing: Spacing,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [spacing, min, max, count] = parts[..] else {
            return Err(format!("grid `{s}`: expected <spacing>:<min>:<max>:<count>"));
        };
        let spacing = match spacing {
            "lin" | "linear" => Spacing::Linear,
            "log" => Spacing::Log,
            other => return Err(format!("grid spacing `{other}`: expected lin or log")),
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("grid bound `{t}` is not a number"));
        let (min, max) = (num(min)?, num(max)?);
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("grid count `{count}` is not a non-negative integer"))?;
        if count < 2 {
            return Err(format!("grid count must be at least 2, got {count}"));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(format!("grid bounds must be finite with min < max, got {min} and {max}"));
        }
        if spacing == Spacing::Log && min <= 0.0 {
            return Err(format!("log grid needs min > 0, got {min}"));
        }
        Ok(GridSpec { spacing, min, max, count })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.spacing {
            Spacing::Linear => "lin",
            Spacing::Log => "log",
        };
        write!(f, "{s}:{}:{}:{}", self.min, self.max, self.count)
    }
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let last = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == last {
                    return self.max;
                }
                let t = i as f64 / last as f64;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g: GridSpec = "log:1e-4:10:6".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 6);
        assert!((p[1] - 1e-3).abs() < 1e-15 && p[5] == 10.0);
        let g: GridSpec = "lin:0.1:20:200".parse().unwrap();
        assert_eq!(g.points()[0], 0.1);
        for bad in ["lin:0:1:0", "lin:0:1:1", "lin:1:0:5", "log:0:1:5", "cubic:0:1:5", "lin:0:1", "lin:a:1:5"] {
            assert!(bad.parse::<GridSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn builtin_defaults() {
        let d = Defaults::parse(BUILTIN, "builtin").unwrap();
        let ids = d.figure_ids();
        assert_eq!(ids.first(), Some(&"1a"));
        assert_eq!(ids.last(), Some(&"10c"));
        assert_eq!(ids.len(), 35);
        for (id, f) in &d.figures {
            f.grid.parse::<GridSpec>().unwrap_or_else(|e| panic!("{id}: {e}"));
            if let Some(t) = &f.thetas {
                t.parse::<GridSpec>().unwrap();
            }
        }
    }
}
