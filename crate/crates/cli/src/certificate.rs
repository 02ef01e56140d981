//! Certificates: the verdicts of one run, rendered deterministically.

use rclkit_core::recollement::R3Semantics;
use rclkit_core::ValidationReport;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug, Default)]
pub struct Certificate {
    pub command: String,
    pub options: Map<String, Value>,
    pub input_digest: Option<String>,
    pub r3_semantics: Option<R3Semantics>,
    pub reports: Vec<ValidationReport>,
    pub details: Map<String, Value>,
    pub unchecked: Vec<String>,
    pub error: Option<(String, String)>,
    pub exit_code: i32,
}

pub fn report_value(r: &ValidationReport) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    v["passed"] = Value::Bool(r.passed());
    v
}

impl Certificate {
    pub fn failed_checks(&self) -> usize {
        self.reports.iter().map(|r| r.failures.len()).sum()
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code {
            0 => "pass",
            1 => "fail",
            _ => "error",
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "options": self.options,
            "input_digest": self.input_digest,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "r3_semantics": self.r3_semantics,
            "reports": self.reports.iter().map(report_value).collect::<Vec<_>>(),
            "failed_checks": self.failed_checks(),
            "details": self.details,
            "unchecked": self.unchecked,
            "error": self.error.as_ref().map(|(kind, message)| json!({ "kind": kind, "message": message })),
            "status": self.status(),
            "exit_code": self.exit_code,
        })
    }

    pub fn render(&self, format: Format) -> String {
        let v = self.to_value();
        match format {
            Format::Structured => serde_json::to_string_pretty(&v).expect("json") + "\n",
            Format::Text => {
                let mut lines = Vec::new();
                flatten("", &v, &mut lines);
                lines.join("\n") + "\n"
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push(format!("{prefix} = {other}")),
    }
}
