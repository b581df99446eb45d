//! Rendering of command results as JSON, CSV or DOT.
//!
//! A command produces one [`Report`]: a JSON summary, optionally a table and
//! optionally a graph. The table is rendered from the same cell values in
//! both JSON (`"rows"`) and CSV, so the two carry the same numbers.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub summary: Map<String, Value>,
    pub table: Option<Table>,
    pub dot: Option<String>,
    pub default_format: Format,
    /// Exit status for a successfully rendered but negative answer.
    pub status: i32,
}

impl Report {
    pub fn json(summary: Map<String, Value>) -> Self {
        Report {
            summary,
            table: None,
            dot: None,
            default_format: Format::Json,
            status: 0,
        }
    }

    pub fn table(summary: Map<String, Value>, table: Table) -> Self {
        Report {
            summary,
            table: Some(table),
            dot: None,
            default_format: Format::Csv,
            status: 0,
        }
    }

    pub fn render(&self, format: Option<Format>) -> Result<String, String> {
        match format.unwrap_or(self.default_format) {
            Format::Json => {
                let mut doc = self.summary.clone();
                if let Some(t) = &self.table {
                    let rows = t
                        .rows
                        .iter()
                        .map(|r| {
                            let obj: Map<String, Value> = t
                                .columns
                                .iter()
                                .map(|c| c.to_string())
                                .zip(r.iter().cloned())
                                .collect();
                            Value::Object(obj)
                        })
                        .collect();
                    doc.insert("rows".into(), Value::Array(rows));
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(doc))
                    .map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let t = self
                    .table
                    .as_ref()
                    .ok_or("this command has no tabular output; use --format json")?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&t.columns).map_err(|e| e.to_string())?;
                for r in &t.rows {
                    w.write_record(r.iter().map(cell_text)).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())
            }
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| "this command has no graph output".to_string()),
        }
    }
}

pub fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Exact integer as a JSON number of arbitrary length.
pub fn int(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer"))
}

pub fn uint(x: &BigUint) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer"))
}

/// Finite floats as numbers; infinities and NaN as strings.
pub fn float(x: f64) -> Value {
    Number::from_f64(x).map_or_else(|| Value::String(format!("{x}")), Value::Number)
}

/// Rationals as `"a/b"` (or `"a"` when integral).
pub fn rational(q: &BigRational) -> Value {
    Value::String(if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    })
}

pub fn text(s: impl ToString) -> Value {
    Value::String(s.to_string())
}
