//! Human-readable and JSON renderings of verification outcomes.

use serde_json::{json, Value};

use fdq::deform::{Report, WitnessValue};
use fdq::suite::PropertyCheck;

use crate::format::{op_json, poly_json};

#[derive(Default)]
pub struct Outcome {
    pub command: String,
    pub checks: Vec<Value>,
    pub lines: Vec<String>,
    pub data: serde_json::Map<String, Value>,
}

impl Outcome {
    pub fn new(command: &str) -> Self {
        Outcome { command: command.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c["passed"] == Value::Bool(true))
    }

    pub fn add_report(&mut self, report: &Report) {
        for c in &report.checks {
            let mut entry = json!({ "name": c.name, "order": c.order, "passed": c.passed });
            let mut line = format!("{:<20} order {}: {}", c.name, c.order, if c.passed { "ok" } else { "FAIL" });
            if let Some(w) = &c.witness {
                let args: Vec<Value> = w.args.iter().map(|m| json!(m.exps())).collect();
                let (value, text) = match &w.value {
                    WitnessValue::Op(d) => (json!({ "op": op_json(d) }), d.to_string()),
                    WitnessValue::Func(p) => (json!({ "function": poly_json(p) }), p.to_string()),
                };
                entry["witness"] = json!({ "args": args, "value": value, "display": text });
                let shown: Vec<String> = w.args.iter().map(|m| format!("{:?}", m.exps())).collect();
                line.push_str(&format!(" at ({}) defect {}", shown.join(", "), text));
            }
            self.checks.push(entry);
            self.lines.push(line);
        }
    }

    pub fn add_check(&mut self, name: &str, passed: bool, detail: &str) {
        self.checks.push(json!({ "name": name, "passed": passed, "detail": detail }));
        self.lines.push(format!("{:<20} {}{}", name, if passed { "ok" } else { "FAIL" }, if detail.is_empty() { String::new() } else { format!(": {detail}") }));
    }

    pub fn add_property(&mut self, p: &PropertyCheck) {
        self.checks.push(json!({
            "name": p.name,
            "cases": p.cases,
            "passed": p.passed(),
            "failures": p.failures,
        }));
        let status = if p.passed() { "ok".to_string() } else { format!("FAIL ({} of {})", p.failures.len(), p.cases) };
        self.lines.push(format!("{:<36} {} cases: {}", p.name, p.cases, status));
        for f in p.failures.iter().take(3) {
            self.lines.push(format!("    {f}"));
        }
    }

    pub fn info(&mut self, key: &str, value: Value, line: String) {
        self.data.insert(key.to_string(), value);
        self.lines.push(line);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "passed": self.passed(),
            "checks": self.checks,
            "data": Value::Object(self.data.clone()),
        })
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!("{}: {}\n", self.command, if self.passed() { "PASSED" } else { "FAILED" }));
        out
    }
}
