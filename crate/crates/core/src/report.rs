//! Check outcomes and the versioned JSON report emitted by the CLI.

use serde::Serialize;
use std::fmt;

pub const REPORT_VERSION: u32 = 1;

/// One named identity or predicate with its verdict.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, detail: detail.into(), witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), passed: false, detail: String::new(), witness: Some(witness.into()) }
    }

    /// Pass if `residual` is `None`, fail with the residual as witness otherwise.
    pub fn from_residual(name: impl Into<String>, residual: Option<String>) -> Self {
        match residual {
            None => Check::pass(name, ""),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.passed { "pass" } else { "FAIL" }, self.name)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

/// Results of one verification suite.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Conventions or signs determined while running (e.g. which sign closes a staircase).
    pub findings: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport { suite: suite.into(), checks: Vec::new(), findings: Vec::new(), elapsed_ms: 0 }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} ({} ms)", self.suite, self.elapsed_ms)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        for x in &self.findings {
            writeln!(f, "  finding: {x}")?;
        }
        write!(f, "  => {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Top-level document written by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    pub seed: u64,
    pub order: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, order: usize) -> Self {
        Report { version: REPORT_VERSION, command: command.into(), seed, order, suites: Vec::new(), series: None, error: None, passed: true }
    }

    pub fn push(&mut self, s: SuiteReport) {
        self.passed &= s.passed();
        self.suites.push(s);
    }

    pub fn fail_with(&mut self, e: &crate::Error) {
        self.passed = false;
        self.error = Some(e.to_string());
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cdo {} (seed {}, order {})", self.command, self.seed, self.order)?;
        if let Some(s) = &self.series {
            writeln!(f, "{}", serde_json::to_string_pretty(s).map_err(|_| fmt::Error)?)?;
        }
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        if let Some(e) = &self.error {
            writeln!(f, "error: {e}")?;
        }
        write!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}
