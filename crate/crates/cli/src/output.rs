use serde_json::{json, Value};

use crate::args::Format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// A command's outcome: the JSON result, a tabular view for csv and md,
/// and whether every checked property held.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub table: Table,
    pub passed: bool,
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some(String::new()),
        _ => None,
    }
}

impl Report {
    pub fn envelope(&self) -> Value {
        json!({
            "tool": "gradus",
            "version": VERSION,
            "command": self.command,
            "config": self.config,
            "passed": self.passed,
            "result": self.result,
        })
    }

    /// Scalar config entries, repeated on every csv row.
    fn metadata(&self) -> Vec<(String, String)> {
        let mut out = vec![("version".to_string(), VERSION.to_string())];
        if let Value::Object(map) = &self.config {
            for (k, v) in map {
                if let Some(s) = scalar(v) {
                    out.push((k.clone(), s));
                }
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.envelope()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Md => self.to_markdown(),
        }
    }

    fn to_csv(&self) -> String {
        let meta = self.metadata();
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = self
            .table
            .columns
            .iter()
            .cloned()
            .chain(meta.iter().map(|(k, _)| k.clone()));
        w.write_record(header).expect("in-memory csv");
        for row in &self.table.rows {
            let record = row.iter().cloned().chain(meta.iter().map(|(_, v)| v.clone()));
            w.write_record(record).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    fn to_markdown(&self) -> String {
        let mut s = format!("## gradus {}\n\n", self.command);
        let meta: Vec<String> = self
            .metadata()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        s += &format!("{}\n\n", meta.join(", "));
        s += &format!("| {} |\n", self.table.columns.join(" | "));
        s += &format!("|{}\n", "---|".repeat(self.table.columns.len()));
        for row in &self.table.rows {
            s += &format!("| {} |\n", row.join(" | "));
        }
        s += &format!("\npassed: {}\n", self.passed);
        s
    }
}
