//! Euler-Zagier multiple zeta function.

mod args;
mod direct;
mod em;

pub use crate::budget::{Accel, TruncationBudget};
pub use args::{in_matsumoto_domain, ArgVector};
pub use direct::mzf_direct;
pub use em::{choose_em_order, mzf_depth2_em, phi_l, PhiValue};

use num_complex::Complex64;

use crate::error::{MzError, Result};
use crate::result::EvalResult;

/// Multiple zeta value at an admissible index (`k_i >= 1`, `k_r >= 2`).
pub fn mzv(indices: &[u32], budget: &TruncationBudget) -> Result<EvalResult> {
    let Some(&last) = indices.last() else {
        return Err(MzError::Precondition("empty index".into()));
    };
    if last < 2 || indices.contains(&0) {
        return Err(MzError::Precondition(format!(
            "index {indices:?} is not admissible (need k_i >= 1 and k_r >= 2)"
        )));
    }
    let args = ArgVector::new(
        indices
            .iter()
            .map(|&k| Complex64::new(k as f64, 0.0))
            .collect(),
    )?;
    mzf_direct(&args, budget)
}

/// Evaluates by the nested series inside the Matsumoto domain and by the
/// Euler-Maclaurin continuation for depth 2 elsewhere.
pub fn mzf_eval(args: &ArgVector, budget: &TruncationBudget) -> Result<EvalResult> {
    if in_matsumoto_domain(args) {
        mzf_direct(args, budget)
    } else if args.depth() == 2 {
        let s = args.entries();
        mzf_depth2_em(s[0], s[1], budget)
    } else {
        Err(MzError::Domain(format!(
            "zeta{args}: depth >= 3 outside the absolute-convergence domain is not supported"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mzv_examples() {
        let b = TruncationBudget::default();
        let z2 = mzv(&[2], &b).unwrap().value.re;
        assert!((z2 - 1.6449340668482264).abs() < 1e-14);
        let z12 = mzv(&[1, 2], &b).unwrap().value.re;
        assert!((z12 - 1.2020569031595942).abs() < 1e-13);
        let z22 = mzv(&[2, 2], &b).unwrap().value.re;
        assert!((z22 - 0.8117424252833536).abs() < 1e-13);
    }

    #[test]
    fn mzv_rejects_non_admissible() {
        let b = TruncationBudget::default();
        assert!(matches!(mzv(&[2, 1], &b), Err(MzError::Precondition(_))));
        assert!(matches!(mzv(&[0, 3], &b), Err(MzError::Precondition(_))));
        assert!(matches!(mzv(&[], &b), Err(MzError::Precondition(_))));
        assert!(matches!(mzv(&[1], &b), Err(MzError::Precondition(_))));
    }
}
