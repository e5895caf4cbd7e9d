//! Tabulated sweep output and its CSV form.
//!
//! A file is a block of `# key=value` metadata lines, one header row, then data
//! rows. Values carry 12 significant digits; an undefined ratio is written as
//! `undefined` and a divergent prediction as `inf`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const UNDEFINED: &str = "undefined";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepResult {
    pub metadata: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// p_pulsed / p_bare, or NaN when the bare probability vanishes.
pub fn ratio(p_pulsed: f64, p_bare: f64) -> f64 {
    if p_bare > 0.0 {
        p_pulsed / p_bare
    } else {
        f64::NAN
    }
}

pub fn format_value(x: f64) -> String {
    if x.is_nan() {
        UNDEFINED.to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.11e}")
    }
}

pub fn parse_value(s: &str) -> Result<f64> {
    match s.trim() {
        UNDEFINED => Ok(f64::NAN),
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        t => t.parse().map_err(|_| Error::InvalidParameter(format!("not a number: {t:?}"))),
    }
}

impl SweepResult {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            metadata: BTreeMap::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_value(x)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut result = SweepResult::default();
        let mut header_seen = false;
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                let (k, v) = meta
                    .trim_start()
                    .split_once('=')
                    .ok_or_else(|| Error::InvalidParameter(format!("line {}: metadata without '='", lineno + 1)))?;
                result.metadata.insert(k.to_string(), v.to_string());
                continue;
            }
            if !header_seen {
                result.columns = line.split(',').map(|c| c.trim().to_string()).collect();
                header_seen = true;
                continue;
            }
            let row = line.split(',').map(parse_value).collect::<Result<Vec<_>>>()?;
            if row.len() != result.columns.len() {
                return Err(Error::InvalidParameter(format!(
                    "line {}: expected {} fields, found {}",
                    lineno + 1,
                    result.columns.len(),
                    row.len()
                )));
            }
            result.rows.push(row);
        }
        if !header_seen {
            return Err(Error::InvalidParameter("missing header row".into()));
        }
        Ok(result)
    }
}
