//! Run reports and their renderers. All counts travel as exact decimal
//! strings; JSON key order is insertion order so emitted reports re-parse
//! and re-emit byte-identically.

use serde_json::{json, Map, Value};

use crate::args::Format;

#[derive(Debug, Clone)]
pub struct Report {
    pub query: Value,
    pub rows: Vec<Value>,
    pub timing_ms: u64,
}

/// Builds a row object with the given field order.
pub fn row(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (key, value) in fields {
        map.insert(key.to_string(), value);
    }
    Value::Object(map)
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
            Format::Bfile => self.to_bfile(),
        }
    }

    pub fn to_json(&self) -> String {
        let document = json!({
            "query": self.query,
            "rows": self.rows,
            "timing_ms": self.timing_ms,
            "version": env!("CARGO_PKG_VERSION"),
        });
        let mut out = serde_json::to_string_pretty(&document).expect("serializable");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let Some(first) = self.rows.first() else {
            return String::new();
        };
        let keys: Vec<&String> = first
            .as_object()
            .expect("rows are objects")
            .keys()
            .collect();
        let mut out = String::new();
        out.push_str(
            &keys
                .iter()
                .map(|k| k.as_str())
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for row in &self.rows {
            let object = row.as_object().expect("rows are objects");
            let cells: Vec<String> = keys
                .iter()
                .map(|k| csv_cell(&plain_cell(&object[k.as_str()])))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("query: {}\n", compact_json(&self.query));
        if let Some(first) = self.rows.first() {
            let keys: Vec<String> = first
                .as_object()
                .expect("rows are objects")
                .keys()
                .cloned()
                .collect();
            let mut table: Vec<Vec<String>> = vec![keys.clone()];
            for row in &self.rows {
                let object = row.as_object().expect("rows are objects");
                table.push(
                    keys.iter()
                        .map(|k| {
                            let cell = plain_cell(&object[k]);
                            if cell.is_empty() {
                                "-".to_string()
                            } else {
                                cell
                            }
                        })
                        .collect(),
                );
            }
            let widths: Vec<usize> = (0..keys.len())
                .map(|col| table.iter().map(|r| r[col].len()).max().unwrap_or(0))
                .collect();
            for line in &table {
                let rendered: Vec<String> = line
                    .iter()
                    .zip(&widths)
                    .map(|(cell, width)| format!("{cell:>width$}"))
                    .collect();
                out.push_str(rendered.join("  ").trim_end());
                out.push('\n');
            }
        }
        out.push_str(&format!("elapsed_ms: {}\n", self.timing_ms));
        out
    }

    /// `index value` lines; rows must carry `n` and `value` fields.
    pub fn to_bfile(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let object = row.as_object().expect("rows are objects");
            let n = &object["n"];
            let value = object["value"].as_str().expect("values are strings");
            out.push_str(&format!("{n} {value}\n"));
        }
        out
    }
}

fn plain_cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn compact_json(value: &Value) -> String {
    serde_json::to_string(value).expect("serializable")
}
