use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    pub details: Value,
}

impl Verdict {
    pub fn new(check: &str, pass: bool, details: Value) -> Self {
        Verdict { check: check.to_owned(), status: if pass { Status::Pass } else { Status::Fail }, details }
    }

    /// `reason` is recorded under `details.reason`.
    pub fn inconclusive(check: &str, reason: impl Into<String>, details: Value) -> Self {
        let mut details = match details {
            Value::Object(map) => map,
            Value::Null => Map::new(),
            other => Map::from_iter([("value".to_owned(), other)]),
        };
        details.insert("reason".to_owned(), Value::String(reason.into()));
        Verdict { check: check.to_owned(), status: Status::Inconclusive, details: Value::Object(details) }
    }

    pub fn failed(check: &str, error: impl std::fmt::Display, details: Value) -> Self {
        let mut details = match details {
            Value::Object(map) => map,
            _ => Map::new(),
        };
        details.insert("error".to_owned(), Value::String(error.to_string()));
        Verdict { check: check.to_owned(), status: Status::Fail, details: Value::Object(details) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub verdicts: Vec<Verdict>,
    pub timing_ms: u64,
    pub tool_version: String,
}

impl Report {
    pub fn new(command: &str, params: Value) -> Self {
        Report {
            command: command.to_owned(),
            params,
            verdicts: Vec::new(),
            timing_ms: 0,
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }

    pub fn any_fail(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.verdicts.iter().filter(|v| v.status == status).count()
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_fail())
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    pub fn summary(&self) -> Value {
        json!({
            "pass": self.count(Status::Pass),
            "fail": self.count(Status::Fail),
            "inconclusive": self.count(Status::Inconclusive),
        })
    }
}

/// A report's JSON with `timingMs` removed, for determinism comparisons.
pub fn strip_timing(report_json: &str) -> Result<String, serde_json::Error> {
    let mut v: Value = serde_json::from_str(report_json)?;
    if let Value::Object(map) = &mut v {
        map.remove("timingMs");
    }
    serde_json::to_string_pretty(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_exit_code() {
        let mut r = Report::new("demo", json!({"n": 3}));
        assert_eq!(r.exit_code(), 0);
        r.verdicts.push(Verdict::inconclusive("c", "node budget", Value::Null));
        assert_eq!(r.exit_code(), 0);
        r.verdicts.push(Verdict::new("c", false, json!({})));
        assert_eq!(r.exit_code(), 1);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["command", "params", "verdicts", "timingMs", "toolVersion"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["verdicts"][0]["status"], "inconclusive");
        assert_eq!(v["verdicts"][0]["details"]["reason"], "node budget");
    }

    #[test]
    fn timing_is_ignored() {
        let mut a = Report::new("x", Value::Null);
        let mut b = a.clone();
        a.timing_ms = 5;
        b.timing_ms = 900;
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(strip_timing(&a.to_json()).unwrap(), strip_timing(&b.to_json()).unwrap());
    }
}
