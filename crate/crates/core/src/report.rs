use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version tag of the structured report format.
pub const SCHEMA: &str = "mackeylab.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: Value,
    /// The result the check exercises.
    pub reference: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, measured: Value, reference: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            measured,
            reference: reference.into(),
            wall_ms: None,
        }
    }

    pub fn with_reference(mut self, reference: impl Into<String>) -> Self {
        self.reference = reference.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub group: Option<String>,
    pub prime: Option<u32>,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, group: Option<String>, prime: Option<u32>, seed: u64) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            command: command.into(),
            group,
            prime,
            seed,
            checks: Vec::new(),
            wall_ms: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn sort_checks(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(g) = &self.group {
            let _ = write!(out, "group: {g}");
            if let Some(p) = self.prime {
                let _ = write!(out, "  prime: {p}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "seed: {:#x}", self.seed);
        for c in &self.checks {
            let _ = write!(out, "{}  {}", c.status.as_str(), c.name);
            if let Some(ms) = c.wall_ms {
                let _ = write!(out, "  ({ms} ms)");
            }
            out.push('\n');
            render_value(&mut out, &c.measured, 1);
            if !c.reference.is_empty() {
                let _ = writeln!(out, "    reference: {}", c.reference);
            }
        }
        let _ = write!(
            out,
            "summary: {} pass, {} fail, {} skip",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        );
        if let Some(ms) = self.wall_ms {
            let _ = write!(out, " in {ms} ms");
        }
        out.push('\n');
        out
    }
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "    ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(inner) if !inner.is_empty() && !is_flat(x) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(out, x, depth + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                    }
                }
            }
        }
        Value::Null => {}
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.values().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::new("group predict", Some("q8".into()), Some(2), 0xB0C);
        r.push(Check::new("b", Status::Skip, json!({"x": [1, 2]}), "main theorem"));
        r.push(Check::new("a", Status::Pass, json!({"dims": {"1": 2}}), ""));
        r.sort_checks();
        r
    }

    #[test]
    fn json_round_trip_and_exit_codes() {
        let r = sample();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.checks[0].name, "a");
        let mut bad = r.clone();
        bad.push(Check::new("c", Status::Fail, Value::Null, ""));
        assert_eq!(bad.exit_code(), 1);
        assert!(bad.to_text().contains("1 pass, 1 fail, 1 skip"));
    }

    #[test]
    fn text_lists_every_check() {
        let t = sample().to_text();
        assert!(t.contains("PASS  a") && t.contains("SKIP  b"));
        assert!(t.contains("seed: 0xb0c"));
    }
}
