//! Check-list reports produced by the verification routines.

/// A single named check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    /// Extra context: counts on success, the offending values on failure.
    pub detail: String,
}

/// An ordered list of checks under a suite name.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerifyReport {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_count(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
    }
}
