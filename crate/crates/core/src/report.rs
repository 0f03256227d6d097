//! Machine-readable outcome of one identity check.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// The numeric probe could not decide (e.g. a root sits on the disk
    /// boundary). Never produced by exact checks.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub outcome: Outcome,
    pub lhs: String,
    pub rhs: String,
    pub elapsed_ms: u64,
}

impl IdentityReport {
    /// Exact comparison: passes iff the two values are equal. Witnesses are
    /// the canonical `Display` forms, so equal values give equal witnesses.
    pub fn exact<T: PartialEq + Display>(id: &str, params: &[(&str, i64)], lhs: &T, rhs: &T) -> Self {
        let outcome = if lhs == rhs { Outcome::Pass } else { Outcome::Fail };
        Self::with_outcome(id, params, outcome, lhs.to_string(), rhs.to_string())
    }

    pub fn with_outcome(id: &str, params: &[(&str, i64)], outcome: Outcome, lhs: String, rhs: String) -> Self {
        IdentityReport {
            id: id.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            outcome,
            lhs,
            rhs,
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// Ordering key used to merge parallel results deterministically.
    pub fn sort_key(&self) -> (&str, Vec<(&str, i64)>) {
        (&self.id, self.params.iter().map(|(k, v)| (k.as_str(), *v)).collect())
    }

    /// JSON object with sorted keys:
    /// `{"elapsed_ms", "id", "lhs", "params", "passed", "rhs"}`.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let mut v = json!({
            "id": self.id,
            "params": self.params,
            "passed": self.passed(),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "elapsed_ms": if with_timing { self.elapsed_ms } else { 0 },
        });
        if self.outcome == Outcome::Inconclusive {
            v["inconclusive"] = Value::Bool(true);
        }
        v
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let status = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        };
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        if self.passed() {
            format!("{status} {} [{params}]", self.id)
        } else {
            format!("{status} {} [{params}] lhs={} rhs={}", self.id, self.lhs, self.rhs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn exact_report_witnesses() {
        let r = IdentityReport::exact("X", &[("n", 2)], &frac(1, 2), &frac(2, 4));
        assert!(r.passed());
        assert_eq!(r.lhs, "1/2");
        assert_eq!(r.lhs, r.rhs);
        let r = IdentityReport::exact("X", &[("n", 2)], &frac(1, 2), &frac(1, 3));
        assert_eq!(r.outcome, Outcome::Fail);
        assert!(r.line().contains("lhs=1/2 rhs=1/3"));
    }

    #[test]
    fn json_keys_sorted_and_timing_masked() {
        let mut r = IdentityReport::exact("X", &[("b", 1), ("a", -2)], &frac(1, 1), &frac(1, 1));
        r.elapsed_ms = 17;
        let s = serde_json::to_string(&r.to_json(false)).unwrap();
        assert_eq!(
            s,
            r#"{"elapsed_ms":0,"id":"X","lhs":"1","params":{"a":-2,"b":1},"passed":true,"rhs":"1"}"#
        );
        assert_eq!(r.to_json(true)["elapsed_ms"], 17);
    }
}
