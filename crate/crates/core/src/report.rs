//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// One verified claim. Informational checks are recorded but never fail a run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    pub extended: bool,
    pub passed: bool,
    pub informational: bool,
    pub detail: Value,
}

impl Check {
    pub fn new(tag: &str, level: Option<usize>, extended: bool, passed: bool, detail: Value) -> Self {
        Check {
            tag: tag.into(),
            level,
            extended,
            passed,
            informational: false,
            detail,
        }
    }

    pub fn info(tag: &str, level: Option<usize>, extended: bool, detail: Value) -> Self {
        Check {
            tag: tag.into(),
            level,
            extended,
            passed: true,
            informational: true,
            detail,
        }
    }

    pub fn label(&self) -> String {
        let mut s = self.tag.clone();
        if let Some(i) = self.level {
            s.push_str(&format!(" i={i}"));
        }
        if self.extended {
            s.push_str(" ext");
        }
        s
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub failed: usize,
    pub failed_tags: Vec<String>,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Value,
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
    /// Wall-clock milliseconds per suite; the only non-reproducible field.
    pub timings_ms: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(
        command: &str,
        config: Value,
        suites: Vec<SuiteReport>,
        timings_ms: BTreeMap<String, u64>,
    ) -> Self {
        let all: Vec<&Check> = suites.iter().flat_map(|s| &s.checks).collect();
        let failed: Vec<String> = all
            .iter()
            .filter(|c| !c.passed && !c.informational)
            .map(|c| c.label())
            .collect();
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            config,
            summary: Summary {
                checks: all.len(),
                failed: failed.len(),
                verdict: if failed.is_empty() { "verified" } else { "mismatch" }.into(),
                failed_tags: failed,
            },
            suites,
            timings_ms,
        }
    }

    pub fn ok(&self) -> bool {
        self.summary.failed == 0
    }

    /// One line per check, for terminals.
    pub fn text_summary(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            for c in &s.checks {
                let status = match (c.informational, c.passed) {
                    (true, _) => "INFO",
                    (false, true) => "ok",
                    (false, false) => "FAIL",
                };
                out.push_str(&format!("[{}] {:<4} {}\n", s.suite, status, c.label()));
            }
        }
        out.push_str(&format!(
            "{} checks, {} failed: {}\n",
            self.summary.checks, self.summary.failed, self.summary.verdict
        ));
        out
    }
}
