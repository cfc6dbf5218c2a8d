//! `key=value` text files: circuit parameter files and the CLI config file.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Keys must be unique within a file.

use std::fs;
use std::path::Path;

use crate::circuit::CircuitParams;
use crate::error::{Error, Result};

pub const PARAM_KEYS: [&str; 6] = ["theta1", "theta2", "g0", "g1", "g2", "g3"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

impl Entry {
    pub fn float(&self) -> Result<f64> {
        match self.value.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::parse(
                self.line,
                format!(
                    "`{}`: expected a finite number, got `{}`",
                    self.key, self.value
                ),
            )),
        }
    }
}

pub fn parse_entries(text: &str) -> Result<Vec<Entry>> {
    let mut entries: Vec<Entry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected `key=value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(Error::parse(line, "empty key"));
        }
        if let Some(prev) = entries.iter().find(|e| e.key == key) {
            return Err(Error::parse(
                line,
                format!("duplicate key `{key}` (first set on line {})", prev.line),
            ));
        }
        entries.push(Entry {
            key: key.to_string(),
            value: value.to_string(),
            line,
        });
    }
    Ok(entries)
}

pub fn parse_params(text: &str) -> Result<CircuitParams> {
    let entries = parse_entries(text)?;
    if let Some(e) = entries
        .iter()
        .find(|e| !PARAM_KEYS.contains(&e.key.as_str()))
    {
        return Err(Error::parse(e.line, format!("unknown key `{}`", e.key)));
    }
    let mut v = [0.0; 6];
    for (slot, key) in v.iter_mut().zip(PARAM_KEYS) {
        let entry = entries
            .iter()
            .find(|e| e.key == key)
            .ok_or(Error::MissingKey(key))?;
        *slot = entry.float()?;
    }
    Ok(CircuitParams::from_array(v))
}

/// Serializes with shortest round-trip float formatting.
pub fn format_params(params: &CircuitParams) -> String {
    let mut out = String::from("# qubitfit circuit parameters\n");
    for (key, value) in PARAM_KEYS.iter().zip(params.to_array()) {
        out.push_str(&format!("{key}={value}\n"));
    }
    out
}

pub fn read_params(path: &Path) -> Result<CircuitParams> {
    parse_params(&fs::read_to_string(path)?)
}

pub fn write_params(path: &Path, params: &CircuitParams) -> Result<()> {
    fs::write(path, format_params(params))?;
    Ok(())
}
