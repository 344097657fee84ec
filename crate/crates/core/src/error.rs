use thiserror::Error;

use crate::result::EvalResult;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, Error)]
pub enum MzError {
    #[error("Bernoulli index {requested} exceeds table capacity {capacity}")]
    Capacity { requested: usize, capacity: usize },

    #[error("pole: {factor} is singular at {point}")]
    Pole { factor: String, point: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),

    #[error("overflow while {0}")]
    Overflow(&'static str),

    #[error("budget exhausted ({reason}); best value {} +/- {:e}", best.value, best.err_bound)]
    Budget {
        reason: String,
        best: Box<EvalResult>,
    },
}

impl MzError {
    pub(crate) fn budget(reason: impl Into<String>, best: EvalResult) -> Self {
        MzError::Budget {
            reason: reason.into(),
            best: Box::new(best),
        }
    }

    /// The best available estimate carried by a budget error.
    pub fn best_estimate(&self) -> Option<&EvalResult> {
        match self {
            MzError::Budget { best, .. } => Some(best),
            _ => None,
        }
    }

    /// True for usage/domain class failures (as opposed to numerical budget failures).
    pub fn is_domain_class(&self) -> bool {
        !matches!(self, MzError::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, MzError>;
