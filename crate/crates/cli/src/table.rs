use std::io::Write;

use lrd_spectra_core::Error;

use crate::Failure;

/// Twelve significant digits, no locale.
pub fn number(x: f64) -> String {
    format!("{x:.11e}")
}

/// Rows of numbers with an optional per-row flag; the `flag` column is only
/// written when some row carries one.
#[derive(Debug, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<(Vec<f64>, Option<String>)>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, values: Vec<f64>, flag: Option<String>) {
        debug_assert_eq!(values.len(), self.header.len());
        self.rows.push((values, flag));
    }

    pub fn flagged(&self) -> usize {
        self.rows.iter().filter(|r| r.1.is_some()).count()
    }

    pub fn write(&self, out: impl Write) -> Result<(), Failure> {
        let with_flag = self.flagged() > 0;
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Failure::io(e.to_string());
        let mut head = self.header.clone();
        if with_flag {
            head.push("flag".into());
        }
        w.write_record(&head).map_err(io)?;
        for (values, flag) in &self.rows {
            let mut rec: Vec<String> = values.iter().map(|&v| number(v)).collect();
            if with_flag {
                rec.push(flag.clone().unwrap_or_default());
            }
            w.write_record(&rec).map_err(io)?;
        }
        w.flush().map_err(|e| Failure::io(e.to_string()))
    }

    /// Exit status after writing: numeric failure when any row is flagged.
    pub fn status(&self) -> Result<(), Failure> {
        match self.flagged() {
            0 => Ok(()),
            k => Err(Failure::numeric(format!("{k} of {} points did not converge", self.rows.len()))),
        }
    }
}

/// A point value, or the best available value and a flag.
pub fn point(result: lrd_spectra_core::Result<f64>) -> Result<(f64, Option<String>), Failure> {
    match result {
        Ok(v) if v.is_finite() => Ok((v, None)),
        Ok(v) => Ok((v, Some("non-finite".into()))),
        Err(Error::NonConvergence { value, .. }) => Ok((value, Some("nonconvergence".into()))),
        Err(e @ (Error::TailDivergence { .. }
        | Error::IntegrabilityViolation { .. }
        | Error::Divergence { .. }
        | Error::Overflow { .. }
        | Error::Pole { .. }
        | Error::NonPositive { .. })) => Ok((f64::NAN, Some(flag_name(&e).into()))),
        Err(e) => Err(Failure::usage(e.to_string())),
    }
}

fn flag_name(e: &Error) -> &'static str {
    match e {
        Error::TailDivergence { .. } => "tail-divergence",
        Error::IntegrabilityViolation { .. } => "integrability",
        Error::Divergence { .. } => "divergence",
        Error::Overflow { .. } => "overflow",
        Error::Pole { .. } => "pole",
        Error::NonPositive { .. } => "nonpositive",
        _ => "error",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(number(1.0), "1.00000000000e0");
        assert_eq!(number(-0.000123456789012345), "-1.23456789012e-4");
    }

    #[test]
    fn flag_column_only_when_needed() {
        let mut t = Table::new(["point", "value"]);
        t.push(vec![1.0, 2.0], None);
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "point,value\n1.00000000000e0,2.00000000000e0\n");
        t.push(vec![2.0, 3.0], Some("nonconvergence".into()));
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("point,value,flag\n") && s.contains("3.00000000000e0,nonconvergence"));
        assert_eq!(t.status().unwrap_err().code, 3);
    }
}
