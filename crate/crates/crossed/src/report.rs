//! Verification reports: named checks with a witness for each failure.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Present exactly when `pass` is false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, failure: Option<Value>) -> Self {
        Check {
            name: name.into(),
            pass: failure.is_none(),
            witness: failure,
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Check::new(name, None)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    /// Free-form counters, e.g. search sizes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<Value>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn check(&mut self, name: impl Into<String>, failure: Option<Value>) {
        self.push(Check::new(name, failure));
    }

    /// Appends another report's checks with `prefix.` on every name.
    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn with_digest_of(mut self, input: &[u8]) -> Self {
        self.digest = Some(digest(input));
        self
    }

    /// JSON value with sorted keys (serde_json maps are ordered).
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.insert("pass".into(), json!(self.passed()));
        }
        v
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// First tuple, in lexicographic order of the index ranges, for which `bad` returns a witness.
pub fn first_failure<F>(ranges: &[usize], bad: F) -> Option<Value>
where
    F: Fn(&[usize]) -> Option<Value> + Sync,
{
    use rayon::prelude::*;
    if ranges.contains(&0) {
        return None;
    }
    let inner: usize = ranges[1..].iter().product();
    (0..ranges[0]).into_par_iter().find_map_first(|a| {
        let mut idx = vec![0usize; ranges.len()];
        idx[0] = a;
        for flat in 0..inner {
            let mut rem = flat;
            for k in (1..ranges.len()).rev() {
                idx[k] = rem % ranges[k];
                rem /= ranges[k];
            }
            if let Some(w) = bad(&idx) {
                return Some(w);
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_lexicographic() {
        let w = first_failure(&[3, 4], |i| {
            (i[0] * i[1] >= 2).then(|| json!([i[0], i[1]]))
        });
        assert_eq!(w, Some(json!([1, 2])));
        assert_eq!(first_failure(&[3, 0], |_| Some(json!(0))), None);
    }

    #[test]
    fn report_json_has_pass_flag() {
        let mut r = VerificationReport::new();
        r.check("a", None);
        r.check("b", Some(json!({"x": 1})));
        let v = r.to_json();
        assert_eq!(v["pass"], json!(false));
        assert!(v["checks"][0].get("witness").is_none());
    }
}
