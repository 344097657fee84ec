use serde::{Deserialize, Serialize};

use crate::error::{MzError, Result};

/// Sequence acceleration applied to slowly converging outer series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Accel {
    None,
    #[default]
    Richardson,
    Aitken,
}

/// Caps and targets for every truncated or accelerated summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationBudget {
    /// Maximum length of outer series (nested-sum truncation, theorem n-sums).
    pub outer_max: usize,
    /// Maximum length of inner direct summations (power tails, remainder series, windows).
    pub inner_max: usize,
    /// Target absolute tolerance.
    pub tol: f64,
    pub accel: Accel,
    /// Number of Euler-Maclaurin correction terms (the order `l` ceiling).
    pub em_terms: usize,
    /// Base point of the Euler-Maclaurin expansion for zeta.
    pub em_base: usize,
    /// Allow data-parallel term generation. Reductions are always done in index order.
    pub parallel: bool,
}

impl Default for TruncationBudget {
    fn default() -> Self {
        TruncationBudget {
            outer_max: 10_000,
            inner_max: 100_000,
            tol: 1e-9,
            accel: Accel::Richardson,
            em_terms: 12,
            em_base: 50,
            parallel: true,
        }
    }
}

impl TruncationBudget {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_accel(mut self, accel: Accel) -> Self {
        self.accel = accel;
        self
    }

    pub fn with_outer_max(mut self, n: usize) -> Self {
        self.outer_max = n;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.outer_max < 1 || self.inner_max < 1 || self.em_terms < 1 || self.em_base < 1 {
            return Err(MzError::Precondition("all budget caps must be >= 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(MzError::Precondition(format!(
                "tolerance must be positive and finite, got {}",
                self.tol
            )));
        }
        if self.em_terms > crate::numkernel::MAX_EM_TERMS {
            return Err(MzError::Precondition(format!(
                "em_terms {} exceeds the maximum {}",
                self.em_terms,
                crate::numkernel::MAX_EM_TERMS
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        TruncationBudget::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_caps() {
        let b = TruncationBudget {
            outer_max: 0,
            ..TruncationBudget::default()
        };
        assert!(b.validate().is_err());
        let b = TruncationBudget::default().with_tol(0.0);
        assert!(b.validate().is_err());
        let b = TruncationBudget::default().with_tol(f64::NAN);
        assert!(b.validate().is_err());
    }
}
