//! Outcome records for identity checks.

use serde::Serialize;

/// Result of one named identity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    /// Identifier of the identity.
    pub name: String,
    /// Whether the identity held.
    pub passed: bool,
    /// Largest absolute deviation seen in floating point (0 for exact checks).
    pub max_deviation: f64,
    /// Short description of a failure or of what was covered.
    pub detail: String,
}

impl Check {
    /// Outcome of an exact comparison.
    pub fn exact(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            max_deviation: 0.0,
            detail: detail.into(),
        }
    }

    /// Outcome of a floating-point comparison against `tol`.
    pub fn numeric(name: impl Into<String>, deviation: f64, tol: f64, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: deviation <= tol,
            max_deviation: deviation,
            detail: detail.into(),
        }
    }

    /// Check from a list of counterexamples; passes when the list is empty.
    pub fn from_failures(name: impl Into<String>, failures: &[String], covered: usize) -> Check {
        let detail = match failures.first() {
            None => format!("{covered} cases"),
            Some(f) => format!("{} of {covered} cases failed, first: {f}", failures.len()),
        };
        Check::exact(name, failures.is_empty(), detail)
    }
}

/// True if every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Largest deviation over a list of checks.
pub fn max_deviation(checks: &[Check]) -> f64 {
    checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max)
}
