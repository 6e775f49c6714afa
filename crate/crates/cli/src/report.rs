use std::collections::BTreeMap;
use std::fmt::Write as _;

use coha_core::{DimVector, LaurentPoly};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::OutputFormat;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Result of one command. The JSON form is canonical; CSV and text are rendered from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub quiver: String,
    pub params: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub checks: Vec<Check>,
    pub metadata: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str, quiver: &str, params: Value, columns: &[&str]) -> Self {
        Report {
            command: command.to_string(),
            quiver: quiver.to_string(),
            params,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            checks: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn meta(&mut self, key: &str, value: impl Serialize) {
        self.metadata
            .insert(key.to_string(), serde_json::to_value(value).expect("metadata serializes"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Structural validation used when reading a cached payload.
    pub fn validate(&self, command: &str, quiver: &str) -> bool {
        self.command == command
            && self.quiver == quiver
            && self.rows.iter().all(|r| r.len() == self.columns.len())
            && self.rows.iter().flatten().all(valid_cell)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Text => self.render_text(),
        }
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory csv");
        for row in &self.rows {
            w.write_record(row.iter().map(flatten_cell)).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }

    fn render_text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(flatten_cell).collect()).collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |items: &[String]| -> String {
            let padded: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        writeln!(out, "# {} ({})", self.command, &self.quiver[..self.quiver.len().min(12)]).unwrap();
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {}", compact(v)).unwrap();
        }
        if !self.columns.is_empty() {
            writeln!(out, "{}", line(&self.columns)).unwrap();
            for row in &cells {
                writeln!(out, "{}", line(row)).unwrap();
            }
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(out, "{status} {}", c.name).unwrap();
            } else {
                writeln!(out, "{status} {}: {}", c.name, c.detail).unwrap();
            }
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn valid_cell(v: &Value) -> bool {
    match v {
        Value::Object(map) => map.values().all(Value::is_string),
        Value::Array(_) => false,
        _ => true,
    }
}

pub fn dim_cell(d: &DimVector) -> Value {
    Value::String(d.to_string())
}

/// Polynomials are stored as `{exponent: coefficient}` with string keys and values.
pub fn poly_cell(p: &LaurentPoly) -> Value {
    serde_json::to_value(p.coefficient_map()).expect("string map serializes")
}

pub fn flatten_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Object(map) => flatten_poly(map),
        other => other.to_string(),
    }
}

fn exponent_key(e: &str) -> (i64, i64) {
    match e.split_once('/') {
        Some((n, d)) => (n.parse().unwrap_or(0), d.parse().unwrap_or(1)),
        None => (e.parse().unwrap_or(0), 1),
    }
}

/// `c0+c1*q+c2*q^2`, ascending, with `-` for negative coefficients.
pub fn flatten_poly(map: &serde_json::Map<String, Value>) -> String {
    let mut terms: Vec<(&String, &str)> = map.iter().map(|(e, c)| (e, c.as_str().unwrap_or("?"))).collect();
    terms.sort_by(|a, b| {
        let (an, ad) = exponent_key(a.0);
        let (bn, bd) = exponent_key(b.0);
        (an * bd).cmp(&(bn * ad))
    });
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.into_iter().enumerate() {
        let (sign, mag) = match c.strip_prefix('-') {
            Some(m) => ("-", m),
            None => (if i == 0 { "" } else { "+" }, c),
        };
        out.push_str(sign);
        match e.as_str() {
            "0" => out.push_str(mag),
            "1" => write!(out, "{mag}*q").unwrap(),
            e if e.contains('/') || e.starts_with('-') => write!(out, "{mag}*q^({e})").unwrap(),
            e => write!(out, "{mag}*q^{e}").unwrap(),
        }
    }
    out
}
