//! Output records and their JSON / CSV renderings.

use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use overcubic::VerificationReport;
use serde_json::{json, Number, Value};

/// Version tag written into every record; bump when the schema changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Tabular view of a payload, used for CSV output.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

pub struct Record {
    command: String,
    parameters: Value,
    order: Option<usize>,
    payload: Value,
    table: Table,
}

/// A decimal integer as a JSON number of any size.
pub fn number(s: &str) -> Value {
    serde_json::from_str::<Number>(s).map(Value::Number).unwrap_or_else(|_| Value::String(s.to_string()))
}

/// A report with counterexample values as JSON numbers.
pub fn report_json(r: &VerificationReport) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    if let Some(list) = v.get_mut("counterexamples").and_then(Value::as_array_mut) {
        for c in list {
            for key in ["observed", "expected"] {
                if let Some(Value::String(s)) = c.get(key) {
                    let n = number(s);
                    c[key] = n;
                }
            }
        }
    }
    v
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.replace(',', ";"),
        other => other.to_string(),
    }
}

impl Record {
    pub fn new(command: &str, parameters: Value, order: Option<usize>, payload: Value, table: Table) -> Self {
        Record { command: command.to_string(), parameters, order, payload, table }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "schema": SCHEMA_VERSION,
            "order": self.order,
            "parameters": self.parameters,
            "result": self.payload,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.table.columns.join(",");
        out.push('\n');
        for row in &self.table.rows {
            out.push_str(&row.iter().map(csv_field).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format, metadata: bool) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let body = if metadata {
                    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                    json!({ "metadata": { "generated_at_unix": now }, "record": self.to_json() })
                } else {
                    self.to_json()
                };
                let mut s = serde_json::to_string_pretty(&body).expect("records serialize");
                s.push('\n');
                s
            }
        }
    }
}
