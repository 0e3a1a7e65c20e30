use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

/// Structured output of a command.
///
/// JSON schema: `{"tool_version": str, "input_digest": str, "checks":
/// [{"name": str, "status": "pass"|"fail"|"inconclusive", "witness": any}]}`.
/// Failed checks come first; otherwise checks keep the order they were run in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub input_digest: String,
    pub checks: Vec<Check>,
}

/// Hex SHA-256 of canonical input texts.
pub fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for (k, p) in parts.iter().enumerate() {
        if k > 0 {
            h.update(b"\0");
        }
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

impl Report {
    pub fn new(input_digest: String) -> Self {
        Report {
            tool_version: crate::TOOL_VERSION.to_string(),
            input_digest,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, witness: impl Serialize) {
        self.checks.push(Check {
            name: name.into(),
            status,
            witness: serde_json::to_value(witness).expect("witnesses serialize"),
        });
    }

    pub fn has(&self, status: Status) -> bool {
        self.checks.iter().any(|c| c.status == status)
    }

    /// 0 if every check passed, 1 on any failure, 3 if the rest is only
    /// inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.has(Status::Fail) {
            1
        } else if self.has(Status::Inconclusive) {
            3
        } else {
            0
        }
    }

    fn ordered(&self) -> Vec<&Check> {
        let mut v: Vec<&Check> = self.checks.iter().collect();
        v.sort_by_key(|c| c.status != Status::Fail);
        v
    }

    pub fn to_json(&self) -> String {
        let ordered = Report {
            tool_version: self.tool_version.clone(),
            input_digest: self.input_digest.clone(),
            checks: self.ordered().into_iter().cloned().collect(),
        };
        let mut s = serde_json::to_string_pretty(&ordered).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\ninput sha256:{}\n", self.tool_version, self.input_digest);
        for c in self.ordered() {
            write!(out, "{:<12} {}", c.status.tag(), c.name).unwrap();
            match &c.witness {
                Value::Null => {}
                Value::String(s) => write!(out, ": {s}").unwrap(),
                other => write!(out, ": {other}").unwrap(),
            }
            out.push('\n');
        }
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        writeln!(
            out,
            "{} passed, {} failed, {} inconclusive",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Inconclusive)
        )
        .unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_first_and_exit_codes() {
        let mut r = Report::new(digest(&["x"]));
        r.push("a", Status::Pass, ());
        assert_eq!(r.exit_code(), 0);
        r.push("b", Status::Inconclusive, "no product");
        assert_eq!(r.exit_code(), 3);
        r.push("c", Status::Fail, serde_json::json!({"morphism": "f"}));
        assert_eq!(r.exit_code(), 1);
        let text = r.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[2].starts_with("FAIL") && lines[2].ends_with(r#"c: {"morphism":"f"}"#));
        assert!(lines[3].ends_with("a"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["status"], "fail");
        assert_eq!(v["checks"][2]["witness"], "no product");
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            digest(&["abc"]),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
