//! Structured pass/fail findings shared by every checker and harness.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    /// Process exit code for a report with this status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Indeterminate => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        })
    }
}

/// One named check. A failing check always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub counts: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            status: Status::Pass,
            checks: Vec::new(),
            counts: BTreeMap::new(),
            elapsed_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn pass(&mut self, name: impl Into<String>) -> &mut Self {
        self.push(Check { name: name.into(), status: Status::Pass, witness: None })
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) -> &mut Self {
        self.push(Check { name: name.into(), status: Status::Fail, witness: Some(witness.into()) })
    }

    pub fn indeterminate(&mut self, name: impl Into<String>, reason: impl Into<String>) -> &mut Self {
        self.push(Check {
            name: name.into(),
            status: Status::Indeterminate,
            witness: Some(reason.into()),
        })
    }

    /// Records `name` as passing when `witness` is `None`, failing otherwise.
    pub fn check(&mut self, name: impl Into<String>, witness: Option<String>) -> &mut Self {
        match witness {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self.status = Self::combine(&self.checks);
        self
    }

    /// Merges another report's checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) -> &mut Self {
        for mut check in other.checks {
            check.name = format!("{prefix}.{}", check.name);
            self.checks.push(check);
        }
        self.status = Self::combine(&self.checks);
        self
    }

    pub fn count(&mut self, key: impl Into<String>, value: impl TryInto<u64>) -> &mut Self {
        self.counts.insert(key.into(), value.try_into().unwrap_or(u64::MAX));
        self
    }

    /// Stamps the elapsed time and returns the finished report.
    pub fn finish(mut self) -> Self {
        if let Some(started) = self.started.take() {
            self.elapsed_ms = started.elapsed().as_millis() as u64;
        }
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// First failing check, if any.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    fn combine(checks: &[Check]) -> Status {
        if checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if checks.iter().any(|c| c.status == Status::Indeterminate) {
            Status::Indeterminate
        } else {
            Status::Pass
        }
    }
}
