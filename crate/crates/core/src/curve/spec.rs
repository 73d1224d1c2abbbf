//! Line-oriented `key = value` curve specification files.
//!
//! ```text
//! mode = model          mode = table
//! q = 5                 q = 3
//! A = 0                 genus = 2
//! B = -1                countsX = [5, 17, 26, 89]
//! label = ...           countsXprime = [8, 14, 26, 98]
//! ```
//!
//! `#` starts a comment. Integers only; unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use super::model::CurveModel;
use super::zeta::{CountTable, CoverData};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSpec {
    Model { q: u64, a: i64, b: i64, label: String },
    Table { q: u64, genus: u32, counts_x: Vec<i64>, counts_x_prime: Vec<i64>, label: String },
}

impl CurveSpec {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let key = k.trim().to_string();
            if fields.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("line {}: duplicate key `{key}`", lineno + 1)));
            }
        }
        let mode = fields.remove("mode").unwrap_or_else(|| "model".to_string());
        let label = fields.remove("label").unwrap_or_default();
        let q = take_int(&mut fields, "q")?;
        if q <= 0 {
            return Err(Error::Parse(format!("q must be positive, got {q}")));
        }
        let spec = match mode.as_str() {
            "model" => CurveSpec::Model {
                q: q as u64,
                a: take_int(&mut fields, "A")?,
                b: take_int(&mut fields, "B")?,
                label,
            },
            "table" => {
                let genus = take_int(&mut fields, "genus")?;
                if genus < 1 {
                    return Err(Error::Parse(format!("genus must be at least 1, got {genus}")));
                }
                CurveSpec::Table {
                    q: q as u64,
                    genus: genus as u32,
                    counts_x: take_list(&mut fields, "countsX")?,
                    counts_x_prime: take_list(&mut fields, "countsXprime")?,
                    label,
                }
            }
            other => return Err(Error::Parse(format!("unknown mode `{other}` (expected model or table)"))),
        };
        if let Some(k) = fields.keys().next() {
            return Err(Error::Parse(format!("unknown key `{k}` for mode {mode}")));
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<CoverData> {
        match self {
            CurveSpec::Model { q, a, b, label } => CoverData::from_model(CurveModel::new(*q, *a, *b, label.clone())?),
            CurveSpec::Table { q, genus, counts_x, counts_x_prime, label } => CoverData::from_tables(
                CountTable { q: *q, genus: *genus, counts: counts_x.clone() },
                CountTable { q: *q, genus: 2 * genus - 1, counts: counts_x_prime.clone() },
                label.clone(),
            ),
        }
    }
}

fn take_int(fields: &mut BTreeMap<String, String>, key: &str) -> Result<i64> {
    let v = fields.remove(key).ok_or_else(|| Error::Parse(format!("missing key `{key}`")))?;
    v.parse().map_err(|_| Error::Parse(format!("`{key}` must be an integer, got `{v}`")))
}

fn take_list(fields: &mut BTreeMap<String, String>, key: &str) -> Result<Vec<i64>> {
    let v = fields.remove(key).ok_or_else(|| Error::Parse(format!("missing key `{key}`")))?;
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("`{key}` must be a bracketed list")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("`{key}`: `{s}` is not an integer"))))
        .collect()
}
