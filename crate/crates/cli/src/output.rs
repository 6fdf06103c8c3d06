//! Tabular output as commented CSV or versioned JSON.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub const SCHEMA_VERSION: u32 = 1;

pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
}

pub const fn col(name: &'static str, unit: &'static str) -> Column {
    Column { name, unit }
}

/// One command's result: metadata, a table and optional extra JSON fields.
pub struct Table {
    pub command: &'static str,
    pub metadata: Vec<(String, Value)>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
    pub extra: Vec<(String, Value)>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<Column>) -> Self {
        Self { command, metadata: Vec::new(), columns, rows: Vec::new(), extra: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl Serialize) {
        self.metadata.push((key.to_owned(), to_value(value)));
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn extra(&mut self, key: &str, value: impl Serialize) {
        self.extra.push((key.to_owned(), to_value(value)));
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# capfloat {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "# command: {}", self.command)?;
        for (key, value) in &self.metadata {
            writeln!(out, "# {key}: {}", cell_text(value))?;
        }
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        writer.write_record(self.columns.iter().map(|c| {
            if c.unit.is_empty() {
                c.name.to_owned()
            } else {
                format!("{} [{}]", c.name, c.unit)
            }
        }))?;
        for row in &self.rows {
            writer.write_record(row.iter().map(cell_text))?;
        }
        writer.flush()
    }

    fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA_VERSION));
        doc.insert("command".into(), json!(self.command));
        doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        doc.insert("metadata".into(), Value::Object(self.metadata.iter().cloned().collect()));
        doc.insert(
            "columns".into(),
            Value::Array(self.columns.iter().map(|c| json!({ "name": c.name, "unit": c.unit })).collect()),
        );
        let rows = self
            .rows
            .iter()
            .map(|row| Value::Object(self.columns.iter().zip(row).map(|(c, v)| (c.name.to_owned(), v.clone())).collect()))
            .collect();
        doc.insert("rows".into(), Value::Array(rows));
        for (key, value) in &self.extra {
            doc.insert(key.clone(), value.clone());
        }
        serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
        writeln!(out)
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

fn cell_text(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", vec![col("phi0", "rad"), col("stability", "")]);
        t.meta("gamma", 1.5);
        t.push(vec![json!(0.25), json!("stable")]);
        t.push(vec![json!(1e-7), Value::Null]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# capfloat "));
        assert_eq!(lines[1], "# command: demo");
        assert_eq!(lines[2], "# gamma: 1.5");
        assert_eq!(lines[3], "phi0 [rad],stability");
        assert_eq!(lines[4], "0.25,stable");
        assert_eq!(lines[5], "1e-7,");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Json, &mut buf).unwrap();
        let doc: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(doc["schema"], json!(1));
        assert_eq!(doc["rows"][0]["phi0"], json!(0.25));
        assert_eq!(doc["columns"][0]["unit"], json!("rad"));
    }
}
