//! Output assembly: a column-oriented table rendered either as CSV (one
//! header row, full-precision floats) or as JSON with a metadata envelope.

use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

/// 17 significant digits: enough to reproduce the f64 bit pattern, so
/// golden-file regression can compare bytes.
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Str(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
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

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Metadata envelope of the JSON mirror format.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, F: Serialize> {
    pub command: &'a str,
    pub flags: &'a F,
    pub version: &'a str,
    pub units: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<serde_json::Value>,
    #[serde(flatten)]
    pub table: &'a Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Resolve the output path: a relative `--output` is placed under
/// `WAVEGUIDE_OUT_DIR` when that variable is set.
pub fn resolve_output(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Some(dir) = std::env::var_os("WAVEGUIDE_OUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

pub fn render<F: Serialize>(
    format: OutputFormat,
    envelope: &Envelope<'_, F>,
) -> Result<String, serde_json::Error> {
    match format {
        OutputFormat::Csv => Ok(envelope.table.to_csv()),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(envelope)?;
            s.push('\n');
            Ok(s)
        }
    }
}
