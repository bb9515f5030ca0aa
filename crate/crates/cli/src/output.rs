use std::fmt::Display;
use std::io::{self, Write};

use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::{Cli, Format};

/// What a command produced, before formatting.
#[derive(Debug, Default)]
pub struct Report {
    /// Top-level JSON fields.
    pub fields: Map<String, Value>,
    /// CSV (or tab-separated dump) body, header line included.
    pub table: String,
    /// Free-form lines shown as CSV comments and a JSON `notes` array.
    pub notes: Vec<String>,
    /// Set when a `--verify` check failed; the output is still written.
    pub verification_failure: Option<String>,
}

impl Report {
    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }
}

pub fn display<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

/// JSON number, or `null` when not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn write_report<W: Write>(out: &mut W, cli: &Cli, report: &Report) -> io::Result<()> {
    let config = serde_json::to_value(cli).expect("config serializes");
    match cli.common.format {
        Format::Csv => {
            writeln!(out, "# fredkin {}", env!("CARGO_PKG_VERSION"))?;
            writeln!(out, "# config {config}")?;
            for note in &report.notes {
                writeln!(out, "# {note}")?;
            }
            out.write_all(report.table.as_bytes())
        }
        Format::Json => {
            let mut doc = Map::new();
            doc.insert(
                "provenance".into(),
                json!({ "tool": "fredkin", "version": env!("CARGO_PKG_VERSION"), "config": config }),
            );
            doc.extend(report.fields.clone());
            if !report.notes.is_empty() {
                doc.insert("notes".into(), json!(report.notes));
            }
            serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
            writeln!(out)
        }
    }
}
