//! Tabular output in CSV or JSON, with provenance metadata.
//!
//! Every command produces a [`Table`]; both formats carry the crate version
//! and the SHA-256 hash of the resolved configuration so a result file can
//! always be matched to its inputs. Output is fully buffered and written in
//! one shot: a failed run never leaves a partial file behind.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    F(f64),
    U(u64),
    S(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits: round-trips every f64 exactly.
            Cell::F(v) => format!("{v:.16e}"),
            Cell::U(v) => v.to_string(),
            Cell::S(v) => v.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // NaN/inf have no JSON representation; emit null.
            Cell::F(v) => serde_json::Number::from_f64(*v).map(Value::Number).unwrap_or(Value::Null),
            Cell::U(v) => Value::from(*v),
            Cell::S(v) => Value::String(v.clone()),
        }
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub fn render(table: &Table, format: Format, config_hash: &str) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "# ptspin {}", env!("CARGO_PKG_VERSION"));
            let _ = writeln!(out, "# config_hash: {config_hash}");
            let _ = writeln!(out, "# columns: {}", table.columns.join(","));
            let _ = writeln!(out, "{}", table.columns.join(","));
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                .collect();
            let doc = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "config_hash": config_hash,
                "columns": table.columns,
                "rows": rows,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
            text.push('\n');
            text
        }
    }
}

pub fn write_out(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Numerical(format!("cannot write {}: {e}", path.display()))),
    }
}
