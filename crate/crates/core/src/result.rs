use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numkernel::ComplexValue;

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    DirectSeries,
    EulerMaclaurin,
    ClosedForm,
    Accelerated,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::DirectSeries => "direct_series",
            Method::EulerMaclaurin => "euler_maclaurin",
            Method::ClosedForm => "closed_form",
            Method::Accelerated => "accelerated",
        };
        f.write_str(s)
    }
}

/// A computed value together with an error estimate and bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: ComplexValue,
    /// Estimated bound on |value - exact|. Always finite and non-negative.
    pub err_bound: f64,
    pub terms_used: u64,
    pub method: Method,
}

impl EvalResult {
    pub fn new(value: ComplexValue, err_bound: f64, terms_used: u64, method: Method) -> Self {
        debug_assert!(err_bound >= 0.0);
        EvalResult {
            value,
            err_bound,
            terms_used,
            method,
        }
    }

    pub fn exact(value: ComplexValue, method: Method) -> Self {
        EvalResult::new(value, 0.0, 0, method)
    }

    /// `|self - other| <= self.err_bound + other.err_bound + slack`
    pub fn agrees_with(&self, other: &EvalResult, slack: f64) -> bool {
        (self.value - other.value).norm() <= self.err_bound + other.err_bound + slack
    }
}
