//! Reports and their JSON and CSV renderings.
//!
//! Rationals are written as `"p/q"` strings. In CSV, sets become brace
//! lists such as `"{2,3}"` and every non-numeric field is quoted.

use clap::ValueEnum;
use factorlens_core::family::{FamilyView, UnionSource};
use factorlens_core::{Error, LengthSet, Rational};
use serde_json::{json, Map, Value};

use crate::{is_resource, AppError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(u64),
    Missing,
    Set(LengthSet),
    Text(String),
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Missing => Value::Null,
            Cell::Set(s) => set(s),
            Cell::Text(t) => json!(t),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Missing => String::new(),
            Cell::Set(s) => s.to_string(),
            Cell::Text(t) => t.clone(),
        }
    }
}

impl From<Option<u64>> for Cell {
    fn from(v: Option<u64>) -> Self {
        v.map_or(Cell::Missing, Cell::Int)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub fields: Map<String, Value>,
    pub table: Option<Table>,
    /// One note per computation cut short by a budget.
    pub partial: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            fields: Map::new(),
            table: None,
            partial: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    pub fn is_partial(&self) -> bool {
        !self.partial.is_empty()
    }

    /// `Some(v)` on success; a resource error becomes a partial note and
    /// `None`; any other error is returned.
    pub fn soft<T>(&mut self, what: &str, r: Result<T, Error>) -> Result<Option<T>, AppError> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if is_resource(&e) => {
                self.partial.push(format!("{what}: {e}"));
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = Map::new();
                out.insert("command".into(), json!(self.command));
                out.extend(self.fields.clone());
                if let Some(t) = &self.table {
                    let rows: Vec<Value> = t
                        .rows
                        .iter()
                        .map(|r| {
                            let obj: Map<String, Value> = t
                                .header
                                .iter()
                                .zip(r)
                                .map(|(h, c)| (h.to_string(), c.json()))
                                .collect();
                            Value::Object(obj)
                        })
                        .collect();
                    out.insert("rows".into(), Value::Array(rows));
                }
                out.insert("partial".into(), json!(self.partial));
                let mut s = serde_json::to_string_pretty(&Value::Object(out))
                    .expect("JSON values always serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .quote_style(csv::QuoteStyle::NonNumeric)
                    .from_writer(Vec::new());
                match &self.table {
                    Some(t) => {
                        w.write_record(&t.header).expect("write to memory");
                        for r in &t.rows {
                            w.write_record(r.iter().map(Cell::csv))
                                .expect("write to memory");
                        }
                    }
                    None => {
                        w.write_record(["key", "value"]).expect("write to memory");
                        for (k, v) in &self.fields {
                            let v = match v {
                                Value::String(s) => s.clone(),
                                other => other.to_string(),
                            };
                            w.write_record([k.as_str(), v.as_str()])
                                .expect("write to memory");
                        }
                    }
                }
                for p in &self.partial {
                    w.write_record(["partial", p.as_str()])
                        .expect("write to memory");
                }
                String::from_utf8(w.into_inner().expect("flush to memory")).expect("UTF-8")
            }
        }
    }
}

pub fn rational(r: &Rational) -> Value {
    json!(r.to_string())
}

pub fn set(s: &LengthSet) -> Value {
    json!(s.as_slice())
}

/// Computes `𝒰_1, ..., 𝒰_K` one at a time and stops at the first resource
/// error, which is noted in the report. Returns the horizon reached.
pub fn extend_view<S: UnionSource>(
    view: &mut FamilyView<S>,
    k_max: u64,
    report: &mut Report,
) -> Result<u64, AppError> {
    for k in 1..=k_max {
        if report.soft(&format!("U_{k}"), view.extend_to(k))?.is_none() {
            break;
        }
    }
    Ok(view.horizon())
}

/// `δ = min Δ(𝓛)`, with 1 for an empty distance set.
pub fn min_delta<S: UnionSource>(
    view: &FamilyView<S>,
    report: &mut Report,
) -> Result<Option<u64>, AppError> {
    Ok(report
        .soft("distances", view.family_delta())?
        .map(|d| d.set.min().unwrap_or(1)))
}

/// Rows `(k, λ_k, ρ_k, |𝒰_k|, M_k, 𝒰_k)` up to the cached horizon, with
/// `M_k` the minimal AAP bound at difference `delta`.
pub fn union_table<S: UnionSource>(
    view: &FamilyView<S>,
    delta: Option<u64>,
    with_sets: bool,
) -> Table {
    let mut header = vec!["k", "lambda", "rho", "size", "m"];
    if with_sets {
        header.push("union");
    }
    let rows = (1..=view.horizon())
        .map(|k| {
            let u = view.union(k);
            let m = delta.and_then(|d| u.minimal_aap_bound(d)).map(|w| w.bound);
            let mut row = vec![
                Cell::Int(k),
                Cell::Int(view.lambda(k)),
                Cell::Int(view.rho(k)),
                Cell::Int(u.len() as u64),
                m.into(),
            ];
            if with_sets {
                row.push(Cell::Set(u.clone()));
            }
            row
        })
        .collect();
    Table { header, rows }
}
