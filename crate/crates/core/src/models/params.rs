use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

use crate::error::{Error, Result};

/// Named real parameters of a catalog model (`n`, `a`, `kappa`, …).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(BTreeMap<String, f64>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder-style insert.
    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.insert(name, value);
        self
    }

    pub fn insert(&mut self, name: &str, value: f64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `key=value`.
    ///
    /// ```
    /// # use lrd_spectra_core::models::Params;
    /// let (k, v) = Params::parse_assignment("kappa=1.5").unwrap();
    /// assert_eq!((k.as_str(), v), ("kappa", 1.5));
    /// ```
    pub fn parse_assignment(text: &str) -> Result<(String, f64)> {
        let (key, value) = text.split_once('=').ok_or_else(|| Error::InvalidParameter {
            name: text.to_string(),
            reason: "expected key=value".to_string(),
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::InvalidParameter {
                name: text.to_string(),
                reason: "empty key".to_string(),
            });
        }
        let v: f64 = value.trim().parse().map_err(|_| Error::InvalidParameter {
            name: key.to_string(),
            reason: format!("`{}` is not a number", value.trim()),
        })?;
        if !v.is_finite() {
            return Err(Error::InvalidParameter {
                name: key.to_string(),
                reason: "value must be finite".to_string(),
            });
        }
        Ok((key.to_string(), v))
    }

    /// Rejects names outside `allowed`.
    pub(crate) fn check_names(&self, allowed: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidParameter {
                name: k.clone(),
                reason: format!("not a parameter of this model (expected one of {})", allowed.join(", ")),
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn real(&self, name: &str, default: f64) -> f64 {
        self.get(name).unwrap_or(default)
    }

    pub(crate) fn positive(&self, name: &str, default: f64) -> Result<f64> {
        let v = self.real(name, default);
        if v > 0.0 {
            Ok(v)
        } else {
            Err(invalid(name, "must be positive"))
        }
    }

    pub(crate) fn dimension(&self, default: u32, min: u32) -> Result<u32> {
        let v = self.real("n", default as f64);
        if v != libm::round(v) || v < min as f64 || v > 64.0 {
            return Err(invalid("n", &format!("must be an integer in [{min}, 64]")));
        }
        Ok(v as u32)
    }
}

pub(crate) fn invalid(name: &str, reason: &str) -> Error {
    Error::InvalidParameter {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}
