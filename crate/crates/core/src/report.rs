//! Verification reports shared by every `check_*` routine.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "rc-lab/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleResidual {
    pub label: String,
    pub residual: f64,
}

/// Outcome of one identity check. `residual` is relative unless the check is
/// exact, in which case any nonzero residual is a violation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// The identity under test, in words.
    pub identity: String,
    pub algebra: String,
    pub exact: bool,
    pub tolerance: f64,
    pub max_residual: f64,
    pub passed: bool,
    pub samples: Vec<SampleResidual>,
    /// Measured constants (phases, normalizations) recorded alongside.
    pub measured: BTreeMap<String, serde_json::Value>,
    pub error: Option<String>,
}

impl CheckReport {
    pub fn new(name: &str, identity: &str, algebra: &str, tolerance: f64) -> Self {
        CheckReport {
            name: name.into(),
            identity: identity.into(),
            algebra: algebra.into(),
            exact: tolerance == 0.0,
            tolerance,
            max_residual: 0.0,
            passed: true,
            samples: Vec::new(),
            measured: BTreeMap::new(),
            error: None,
        }
    }

    pub fn push(&mut self, label: impl Into<String>, residual: f64) {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        self.max_residual = self.max_residual.max(residual);
        if residual > self.tolerance {
            self.passed = false;
        }
        self.samples.push(SampleResidual {
            label: label.into(),
            residual,
        });
    }

    pub fn measure(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.measured.insert(key.into(), value.into());
    }

    pub fn fail(&mut self, err: impl ToString) {
        self.passed = false;
        self.error = Some(err.to_string());
    }

    /// Builds a report from a fallible body; an error marks it failed.
    pub fn run(
        name: &str,
        identity: &str,
        algebra: &str,
        tolerance: f64,
        body: impl FnOnce(&mut CheckReport) -> crate::Result<()>,
    ) -> CheckReport {
        let mut rep = CheckReport::new(name, identity, algebra, tolerance);
        if let Err(e) = body(&mut rep) {
            rep.fail(e);
        }
        if rep.samples.is_empty() && rep.error.is_none() {
            rep.fail("no samples evaluated");
        }
        rep
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} {} [{}] max residual {:.3e} (tol {:.1e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.algebra,
            self.max_residual,
            self.tolerance
        )
    }
}

/// `|a - b| / max(|a|, |b|, floor)`
pub fn rel_err(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

pub fn rel_err_c(a: num_complex::Complex64, b: num_complex::Complex64, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}

/// Suite of reports with the versioned envelope used on the wire.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<CheckReport>) -> Self {
        SuiteReport {
            schema: SCHEMA.into(),
            suite: suite.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_and_nan_handling() {
        let mut r = CheckReport::new("x", "a = b", "rank1", 1e-6);
        r.push("ok", 1e-9);
        assert!(r.passed);
        r.push("nan", f64::NAN);
        assert!(!r.passed && r.max_residual.is_infinite());
        let exact = CheckReport::new("y", "a = b", "rank1", 0.0);
        assert!(exact.exact);
    }

    #[test]
    fn empty_run_fails() {
        let r = CheckReport::run("z", "", "rank1", 1.0, |_| Ok(()));
        assert!(!r.passed);
    }
}
