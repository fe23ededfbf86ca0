use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unverified,
    Consistent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// A proved statement; failure sets exit code 1.
    Theorem,
    /// A conjecture or open question; never affects the exit code.
    Conjecture,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub level: Level,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn theorem(name: impl Into<String>, statement: &str, passed: bool) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            level: Level::Theorem,
            status: if passed { Status::Pass } else { Status::Fail },
            detail: String::new(),
        }
    }

    pub fn conjecture(name: impl Into<String>, statement: &str, consistent: bool) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            level: Level::Conjecture,
            status: if consistent { Status::Consistent } else { Status::Unverified },
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Output of one invocation. Serializes canonically: struct fields in
/// declaration order, map keys sorted, rationals as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: String,
    pub results: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: Vec<String>, input: &[u8]) -> Self {
        Self {
            command,
            input_digest: format!("sha256:{}", hex::encode(Sha256::digest(input))),
            results: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn theorem_failed(&self) -> bool {
        self.checks.iter().any(|c| c.level == Level::Theorem && c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command  {}", self.command.join(" "));
        let _ = writeln!(out, "input    {}", self.input_digest);
        if !self.results.is_empty() {
            let _ = writeln!(out, "\nresults");
            let width = self.results.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in &self.results {
                let _ = writeln!(out, "  {k:<width$}  {}", compact(v));
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "\nchecks");
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let status = serde_json::to_value(c.status).expect("status serializes");
                let status = status.as_str().expect("string").to_uppercase();
                let _ = write!(out, "  {status:<10} {:<width$}  {}", c.name, c.statement);
                if !c.detail.is_empty() {
                    let _ = write!(out, " ({})", c.detail);
                }
                out.push('\n');
            }
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_is_byte_identical() {
        let mut r = RunReport::new(vec!["bsat-arr".into(), "length".into()], b"{}");
        r.result("zeta", json!("2/3"));
        r.result("alpha", json!({"b": 1, "a": [1, 2]}));
        r.checks.push(Check::theorem("x", "a statement", true));
        r.checks.push(Check::conjecture("y", "another", false).with_detail("why"));
        let text = r.to_json();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(!back.theorem_failed());
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
    }
}
