//! Deterministic table and document writing. CSV uses RFC-4180 quoting, a
//! '.' decimal separator, and a header row whose names carry the units;
//! JSON is UTF-8 with snake_case keys. Every file output gets a
//! `<file>.manifest.json` sidecar.

use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Value};

use crate::config::OutputFormat;
use crate::error::{io_error, CliError};
use crate::manifest::{sha256_hex, OutputRecord, RunManifest};

#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Num(f64),
    Int(u64),
}

#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row arity matches header");
        self.rows.push(row);
    }

    fn to_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Cell::Text(s) => csv_field(s),
                    Cell::Num(v) => format_sig(*v, precision),
                    Cell::Int(v) => v.to_string(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of one object per row, keyed by column name.
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Text(s) => Value::String(s.clone()),
                        Cell::Num(v) => json!(v),
                        Cell::Int(v) => json!(v),
                    };
                    object.insert(name.clone(), value);
                }
                Value::Object(object)
            })
            .collect();
        Value::Array(rows)
    }
}

/// `precision` significant digits in scientific notation.
fn format_sig(value: f64, precision: usize) -> String {
    format!("{value:.*e}", precision.saturating_sub(1))
}

fn pretty(doc: &Value) -> String {
    serde_json::to_string_pretty(doc).expect("JSON documents serialize") + "\n"
}

/// RFC-4180: quote a field containing separators or quotes, doubling quotes.
fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// Where and how a run writes its result.
#[derive(Debug, Clone)]
pub struct Sink {
    pub format: OutputFormat,
    pub path: Option<PathBuf>,
    pub precision: usize,
}

impl Sink {
    /// Output settings as resolved-config content, so the hash pins them.
    pub fn describe(&self) -> Value {
        json!({
            "format": self.format.name(),
            "path": self.path.as_ref().map(|p| p.display().to_string()),
            "precision": self.precision,
        })
    }

    pub fn write_table(&self, table: &Table, manifest: RunManifest) -> Result<(), CliError> {
        let body = match self.format {
            OutputFormat::Csv => table.to_csv(self.precision),
            OutputFormat::Json => pretty(&table.to_json()),
        };
        self.emit(body, manifest)
    }

    /// Writes a JSON document regardless of the csv/json setting; callers
    /// with a tabular rendering should prefer [`Sink::write_table`].
    pub fn write_document(&self, doc: &Value, manifest: RunManifest) -> Result<(), CliError> {
        self.emit(pretty(doc), manifest)
    }

    fn emit(&self, body: String, mut manifest: RunManifest) -> Result<(), CliError> {
        match &self.path {
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(body.as_bytes())
                    .and_then(|()| stdout.flush())
                    .map_err(|err| CliError::Io(format!("cannot write stdout: {err}")))
            }
            Some(path) => {
                std::fs::write(path, &body).map_err(|err| io_error("cannot write", path, err))?;
                manifest.output = Some(OutputRecord {
                    path: path.display().to_string(),
                    format: self.format.name().to_string(),
                    precision: self.precision,
                    sha256: sha256_hex(body.as_bytes()),
                });
                let mut manifest_path = path.clone().into_os_string();
                manifest_path.push(".manifest.json");
                let manifest_path = PathBuf::from(manifest_path);
                let text = serde_json::to_string_pretty(&manifest)
                    .expect("manifest serialization is infallible");
                std::fs::write(&manifest_path, text + "\n")
                    .map_err(|err| io_error("cannot write manifest", &manifest_path, err))
            }
        }
    }
}
