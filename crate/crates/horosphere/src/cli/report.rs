//! Machine-readable reports with deterministic key ordering, plus a plain
//! text rendering.

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    Ok,
    Undecided,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub status: ReportStatus,
    pub warnings: Vec<String>,
    /// BTreeMap so identical inputs give byte-identical output.
    pub results: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            status: ReportStatus::Ok,
            warnings: Vec::new(),
            results: BTreeMap::new(),
        }
    }

    pub fn error(command: &str, message: String) -> Report {
        let mut r = Report::new(command);
        r.status = ReportStatus::Error;
        r.results.insert("error".into(), Value::String(message));
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            ReportStatus::Ok => 0,
            ReportStatus::Error => 1,
            ReportStatus::Undecided => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!(
            "status: {}\n",
            match self.status {
                ReportStatus::Ok => "ok",
                ReportStatus::Undecided => "undecided",
                ReportStatus::Error => "error",
            }
        ));
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for (k, v) in &self.results {
            out.push_str(&format!("{k}: {}\n", text_value(v)));
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("value serializes"),
    }
}
