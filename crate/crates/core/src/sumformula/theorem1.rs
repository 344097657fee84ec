//! The depth-2 sum formula `sum_{n>=0} (zeta(s-n-2, n+2) - zeta(-n, s+n)) = zeta(s)`.

use num_complex::Complex64;

use super::gab::{g_ab_recursive, GabSpec, DEFAULT_DEPTH_CAP};
use super::report::{ReportBuilder, VerificationReport};
use crate::budget::TruncationBudget;
use crate::error::{MzError, Result};
use crate::mzf::{mzf_eval, ArgVector};
use crate::numkernel::{pole_check, riemann_zeta};
use crate::result::EvalResult;

/// The `n`-th term `zeta(s-n-2, n+2) - zeta(-n, s+n)`.
///
/// Both values come from the nested series when `Re(s) > 2` and from the
/// Euler-Maclaurin continuation otherwise.
pub fn theorem1_term(s: Complex64, n: usize, budget: &TruncationBudget) -> Result<EvalResult> {
    let nf = n as f64;
    let a = mzf_eval(
        &ArgVector::new(vec![s - nf - 2.0, Complex64::new(nf + 2.0, 0.0)])?,
        budget,
    )?;
    let b = mzf_eval(
        &ArgVector::new(vec![Complex64::new(-nf, 0.0), s + nf])?,
        budget,
    )?;
    Ok(EvalResult::new(
        a.value - b.value,
        a.err_bound + b.err_bound,
        a.terms_used + b.terms_used,
        a.method,
    ))
}

fn check_domain(s: Complex64) -> Result<()> {
    if s.re <= 1.0 {
        return Err(MzError::Domain(format!(
            "the series needs Re(s) > 1, got s = {s}"
        )));
    }
    pole_check(s, 1.0, || "zeta(s)".to_string())
}

/// Accelerated limit of the partial sums of the series.
pub fn theorem1_lhs(s: Complex64, budget: &TruncationBudget) -> Result<EvalResult> {
    check_domain(s)?;
    g_ab_recursive(&GabSpec::new(Vec::new(), s, 2)?, DEFAULT_DEPTH_CAP, budget)
}

/// Checks the series against `zeta(s)`.
pub fn theorem1_check(s: Complex64, budget: &TruncationBudget) -> Result<VerificationReport> {
    check_domain(s)?;
    let rep = ReportBuilder::start()
        .param("s", s)
        .param("accel", format!("{:?}", budget.accel).to_lowercase());
    let lhs = theorem1_lhs(s, budget)?;
    let rhs = riemann_zeta(s, budget)?;
    Ok(rep.finish("theorem1", lhs, rhs, budget.tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mzf::mzf_direct;
    use crate::numkernel::cx;

    #[test]
    fn first_term_at_four() {
        let b = TruncationBudget::default();
        let t = theorem1_term(cx(4.0, 0.0), 0, &b).unwrap();
        let z22 = mzf_direct(&ArgVector::from_reals(&[2.0, 2.0]).unwrap(), &b).unwrap();
        let z04 = mzf_direct(&ArgVector::from_reals(&[0.0, 4.0]).unwrap(), &b).unwrap();
        assert!((t.value - (z22.value - z04.value)).norm() < 1e-14);
    }

    #[test]
    fn sums_to_zeta_four() {
        let b = TruncationBudget::default().with_tol(1e-8);
        let r = theorem1_check(cx(4.0, 0.0), &b).unwrap();
        assert!(r.passed && r.abs_diff < 1e-8, "{r:?}");
    }

    #[test]
    fn rejects_pole_and_half_plane() {
        let b = TruncationBudget::default();
        assert!(theorem1_lhs(cx(1.0, 0.0), &b)
            .unwrap_err()
            .is_domain_class());
        assert!(theorem1_lhs(cx(0.5, 3.0), &b)
            .unwrap_err()
            .is_domain_class());
    }
}
