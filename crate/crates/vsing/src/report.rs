//! Check results and the machine-readable run report.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified (or failed) case. A failing result always carries a
/// serialized witness state sufficient to reproduce the computation.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, details: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            details: details.into(),
            witness: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        details: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckResult {
            name: name.into(),
            params: BTreeMap::new(),
            status: Status::Fail,
            details: details.into(),
            witness: Some(witness.into()),
        }
    }

    pub fn skipped(name: impl Into<String>, details: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            params: BTreeMap::new(),
            status: Status::Skipped,
            details: details.into(),
            witness: None,
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// The full report emitted by the verification driver.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub p: u32,
    pub config: serde_json::Value,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    /// Assembles a report; checks are ordered by name so that equal
    /// configurations produce byte-identical output.
    pub fn new(p: u32, config: serde_json::Value, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let summary = Summary {
            pass: checks.iter().filter(|c| c.status == Status::Pass).count(),
            fail: checks.iter().filter(|c| c.status == Status::Fail).count(),
            skipped: checks
                .iter()
                .filter(|c| c.status == Status::Skipped)
                .count(),
        };
        Report {
            version: "1".into(),
            p,
            config,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fail_requires_witness_and_names_sort() {
        let checks = vec![
            CheckResult::pass("b-check", "ok"),
            CheckResult::fail("a-check", "broken", "vsing-state v1\n..."),
        ];
        let report = Report::new(2, serde_json::json!({"seed": 0}), checks);
        assert_eq!(report.checks[0].name, "a-check");
        assert!(report.checks[0].witness.is_some());
        assert_eq!(report.summary.pass, 1);
        assert_eq!(report.summary.fail, 1);
        assert!(!report.all_passed());
        let json = report.to_json();
        assert!(json.contains("\"version\": \"1\""));
        assert!(json.contains("\"summary\""));
    }
}
