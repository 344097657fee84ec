use num_complex::Complex64;

use super::report::{ReportBuilder, VerificationReport};
use crate::budget::TruncationBudget;
use crate::error::{MzError, Result};
use crate::mzf::{mzf_direct, ArgVector};
use crate::numkernel::{riemann_zeta, CompensatedSum};
use crate::result::{EvalResult, Method};

/// Compositions `k_1 + ... + k_r = k` with `k_i >= 1` and `k_r >= 2`, in
/// ascending lexicographic order.
pub fn compositions(k: u32, r: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if r == 0 || k < r + 1 {
        return out;
    }
    let mut cur = Vec::with_capacity(r as usize);
    fn rec(remaining: u32, slots: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            if remaining >= 2 {
                cur.push(remaining);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for first in 1..=remaining.saturating_sub(slots) {
            cur.push(first);
            rec(remaining - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(k, r, &mut cur, &mut out);
    out
}

/// Number of admissible compositions of `k` into `r` parts, `C(k-2, r-1)`.
pub fn composition_count(k: u32, r: u32) -> u64 {
    if r == 0 || k < r + 1 {
        return 0;
    }
    let (n, m) = ((k - 2) as u64, (r - 1) as u64);
    (0..m).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `sum zeta(prefix, m_1, ..., m_b)` over admissible compositions of `k` into `b` parts.
pub fn composition_sum(
    prefix: &[Complex64],
    b: u32,
    k: u32,
    budget: &TruncationBudget,
) -> Result<EvalResult> {
    let comps = compositions(k, b);
    if comps.is_empty() {
        return Err(MzError::Precondition(format!(
            "no admissible compositions of {k} into {b} parts"
        )));
    }
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut terms = 0;
    for c in &comps {
        let mut args = prefix.to_vec();
        args.extend(c.iter().map(|&m| Complex64::new(m as f64, 0.0)));
        let r = mzf_direct(&ArgVector::new(args)?, budget)?;
        acc.add(r.value);
        err += r.err_bound;
        terms += r.terms_used;
    }
    Ok(EvalResult::new(
        acc.finish()?,
        err,
        terms,
        Method::DirectSeries,
    ))
}

/// Sum of all admissible MZVs of weight `k` and depth `r` against `zeta(k)`.
pub fn classical_sum_formula(
    k: u32,
    r: u32,
    budget: &TruncationBudget,
) -> Result<VerificationReport> {
    if r < 1 || k <= r {
        return Err(MzError::Precondition(format!(
            "sum formula needs k > r >= 1, got k={k}, r={r}"
        )));
    }
    let rep = ReportBuilder::start()
        .param("k", k)
        .param("r", r)
        .param("compositions", composition_count(k, r));
    let lhs = composition_sum(&[], r, k, budget)?;
    let rhs = riemann_zeta(Complex64::new(k as f64, 0.0), budget)?;
    Ok(rep.finish("classical_sum_formula", lhs, rhs, budget.tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        assert_eq!(compositions(5, 2), vec![vec![1, 4], vec![2, 3], vec![3, 2]]);
        assert_eq!(compositions(3, 2), vec![vec![1, 2]]);
        assert!(compositions(2, 2).is_empty());
    }

    #[test]
    fn counts_match_enumeration() {
        for k in 2..=10 {
            for r in 1..k {
                assert_eq!(
                    compositions(k, r).len() as u64,
                    composition_count(k, r),
                    "k={k} r={r}"
                );
            }
        }
    }

    #[test]
    fn weight_four() {
        let rep = classical_sum_formula(4, 2, &TruncationBudget::default()).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!((rep.rhs.value.re - 1.0823232337111382).abs() < 1e-14);
    }

    #[test]
    fn k_not_above_r_is_rejected() {
        assert!(matches!(
            classical_sum_formula(2, 2, &TruncationBudget::default()),
            Err(MzError::Precondition(_))
        ));
    }
}
