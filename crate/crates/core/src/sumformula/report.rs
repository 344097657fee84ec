use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::result::EvalResult;

/// Outcome of checking one identity `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub lhs: EvalResult,
    pub rhs: EvalResult,
    pub abs_diff: f64,
    pub tol: f64,
    /// `abs_diff <= tol + lhs.err_bound + rhs.err_bound`.
    pub passed: bool,
    pub wall_time: Duration,
    pub parameters: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn new(
        identity_id: impl Into<String>,
        lhs: EvalResult,
        rhs: EvalResult,
        tol: f64,
        wall_time: Duration,
        parameters: BTreeMap<String, String>,
    ) -> Self {
        let abs_diff = (lhs.value - rhs.value).norm();
        let passed = Self::decide(abs_diff, tol, &lhs, &rhs);
        VerificationReport {
            identity_id: identity_id.into(),
            lhs,
            rhs,
            abs_diff,
            tol,
            passed,
            wall_time,
            parameters,
        }
    }

    /// The pass criterion, exposed so stored reports can be re-judged.
    pub fn decide(abs_diff: f64, tol: f64, lhs: &EvalResult, rhs: &EvalResult) -> bool {
        abs_diff.is_finite() && abs_diff <= tol + lhs.err_bound + rhs.err_bound
    }
}

/// Collects `key = value` parameters and the start time of a check.
pub(crate) struct ReportBuilder {
    start: Instant,
    params: BTreeMap<String, String>,
}

impl ReportBuilder {
    pub(crate) fn start() -> Self {
        ReportBuilder {
            start: Instant::now(),
            params: BTreeMap::new(),
        }
    }

    pub(crate) fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn finish(
        self,
        id: &str,
        lhs: EvalResult,
        rhs: EvalResult,
        tol: f64,
    ) -> VerificationReport {
        VerificationReport::new(id, lhs, rhs, tol, self.start.elapsed(), self.params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::cx;
    use crate::result::Method;

    #[test]
    fn pass_rule_counts_error_bounds() {
        let a = EvalResult::new(cx(1.0, 0.0), 1e-7, 1, Method::ClosedForm);
        let b = EvalResult::new(cx(1.0 + 2e-7, 0.0), 0.0, 1, Method::ClosedForm);
        let r = VerificationReport::new(
            "x",
            a,
            b,
            1e-7,
            Duration::ZERO,
            BTreeMap::new(),
        );
        assert!(r.passed);
        let r = VerificationReport::new("x", a, b, 1e-8, Duration::ZERO, BTreeMap::new());
        assert!(!r.passed);
    }
}
