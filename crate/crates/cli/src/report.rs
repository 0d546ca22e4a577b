use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub polynomial: String,
}

/// Everything one invocation produced, in a stable order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub seed: u64,
    pub summary: BTreeMap<String, Value>,
    pub results: Vec<Outcome>,
    pub certificates: Vec<Certificate>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        RunReport {
            schema: SCHEMA_VERSION,
            command: command.into(),
            inputs: BTreeMap::new(),
            seed,
            summary: BTreeMap::new(),
            results: Vec::new(),
            certificates: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.into(), value.to_string());
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.into(), value.into());
    }

    fn push(&mut self, name: &str, status: Status, value: Value, detail: Option<String>) {
        self.results.push(Outcome {
            name: name.into(),
            status,
            value,
            detail,
        });
    }

    pub fn pass(&mut self, name: &str, detail: Option<String>) {
        self.push(name, Status::Pass, Value::Null, detail);
    }

    pub fn fail(&mut self, name: &str, detail: impl Into<String>) {
        self.push(name, Status::Fail, Value::Null, Some(detail.into()));
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        if ok {
            self.pass(name, None);
        } else {
            self.fail(name, detail);
        }
    }

    pub fn value(&mut self, name: &str, value: impl Into<Value>) {
        self.push(name, Status::Value, value.into(), None);
    }

    pub fn certificate(&mut self, name: impl Into<String>, polynomial: impl ToString) {
        self.certificates.push(Certificate {
            name: name.into(),
            polynomial: polynomial.to_string(),
        });
    }

    pub fn ok(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "confblocks {} (schema {}, seed {})", self.command, self.schema, self.seed);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        for r in &self.results {
            let tag = match r.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Value => "VALUE",
            };
            let _ = write!(out, "{tag} {}", r.name);
            if !r.value.is_null() {
                let _ = write!(out, " = {}", plain(&r.value));
            }
            if let Some(d) = &r.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
        }
        for c in &self.certificates {
            let _ = writeln!(out, "[{}] {}", c.name, c.polynomial);
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
