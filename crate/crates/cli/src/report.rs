use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{Map, Value};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// The requested verdict was reached.
    Achieved = 0,
    Negative = 1,
    Unknown = 2,
    Usage = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    fn label(self) -> &'static str {
        match self {
            Status::Achieved => "achieved",
            Status::Negative => "negative",
            Status::Unknown => "unknown",
            Status::Usage => "usage-error",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

/// What a command found, as ordered key/value fields.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub verdict: String,
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str, status: Status, verdict: impl Into<String>) -> Report {
        Report { command: command.to_string(), status, verdict: verdict.into(), fields: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("status".into(), Value::String(self.status.label().into()));
        m.insert("exit".into(), Value::from(self.status.code()));
        m.insert("verdict".into(), Value::String(self.verdict.clone()));
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    pub fn render(&self, format: Format, timestamp: bool) -> String {
        match format {
            Format::Structured => {
                let mut out = String::new();
                if timestamp {
                    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                    out.push_str(&format!("# generated at {secs}\n"));
                }
                out.push_str(&serde_json::to_string_pretty(&self.to_value()).expect("serialisable"));
                out.push('\n');
                out
            }
            Format::Human => {
                let mut out = format!("{}: {}\n", self.command, self.verdict);
                for (k, v) in &self.fields {
                    human_field(&mut out, k, v);
                }
                out
            }
        }
    }
}

fn human_field(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::String(s) if s.contains('\n') => {
            out.push_str(&format!("{key}:\n"));
            for line in s.lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        Value::String(s) => out.push_str(&format!("{key}: {s}\n")),
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            out.push_str(&format!("{key}:\n"));
            for i in items {
                match i {
                    Value::String(s) => out.push_str(&format!("  {s}\n")),
                    other => out.push_str(&format!("  {other}\n")),
                }
            }
        }
        other => out.push_str(&format!("{key}: {other}\n")),
    }
}
