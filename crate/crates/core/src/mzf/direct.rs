use num_complex::Complex64;

use super::args::{in_matsumoto_domain, ArgVector};
use crate::budget::TruncationBudget;
use crate::error::{MzError, Result};
use crate::numkernel::{
    em_threshold, riemann_zeta, scaled_power_tail, CompensatedSum, ExtComplex, TailExpansion,
    TAIL_ORDER_MIN,
};
use crate::result::{EvalResult, Method};

/// Expansion order used for the nested tails.
pub(crate) fn tail_order(budget: &TruncationBudget) -> usize {
    budget.em_terms.max(TAIL_ORDER_MIN)
}

/// Smallest truncation point at which all tail expansions of `args` are accurate.
fn initial_truncation(args: &ArgVector, order: usize) -> usize {
    let r = args.depth();
    let mut mag = args.entries()[r - 1].norm();
    for l in 1..r {
        mag = mag.max(args.partial_sum(l, r).norm() + (r - l) as f64);
    }
    em_threshold(mag, order, 64)
}

/// Nested sum truncated at `n_{r-1} <= n` with every remaining tail completed.
///
/// Tuples with `n_{r-1} <= n` are summed directly, the innermost variable
/// through the scaled power tail. Tuples with `n_{r-1} > n` are grouped by how
/// many leading indices are `<= n`: `sum_j P_j(n) Z_n(s_{j+1}, ..., s_r)`, with
/// `P_j` the truncated depth-j prefix sum and `Z_n` the asymptotic tail.
fn nested_at(args: &ArgVector, n: usize, budget: &TruncationBudget) -> Result<EvalResult> {
    let s = args.entries();
    let r = s.len();
    debug_assert!(r >= 2);
    let order = tail_order(budget);
    let last = s[r - 1];
    let pair = s[r - 2] + last;

    // prefix[j] = sum over n_1 < ... < n_j < m of prod n_i^{-s_i}
    let mut prefix = vec![ExtComplex::ZERO; r - 1];
    prefix[0] = ExtComplex::from_complex(Complex64::new(1.0, 0.0));
    let mut acc = CompensatedSum::new();
    let mut abs_sum = 0.0;
    let mut err = 0.0;
    for m in 1..=n {
        let ln_m = (m as f64).ln();
        let (w, w_err) = scaled_power_tail(last, m, order, budget.em_base, budget.inner_max)?;
        let weight = prefix[r - 2] * ExtComplex::exp(-pair * ln_m);
        let term = (weight * w).to_complex()?;
        acc.add(term);
        abs_sum += term.norm();
        err += weight.norm() * w_err;
        for j in (1..r - 1).rev() {
            let add = prefix[j - 1] * ExtComplex::exp(-s[j - 1] * ln_m);
            prefix[j] += add;
        }
    }

    let mut tail = TailExpansion::power(last, n, order)?;
    for j in (0..r - 1).rev() {
        tail = tail.prepend(s[j])?;
        let (v, e) = tail.value();
        let contrib = (prefix[j] * v).to_complex()?;
        acc.add(contrib);
        abs_sum += contrib.norm();
        err += (prefix[j] * e).norm();
    }
    let value = acc.finish()?;
    err += 8.0 * f64::EPSILON * abs_sum;
    Ok(EvalResult::new(value, err, n as u64, Method::DirectSeries))
}

/// Multiple zeta function by its defining nested series (Matsumoto domain only).
///
/// The truncation point doubles until the error estimate meets `budget.tol`.
pub fn mzf_direct(args: &ArgVector, budget: &TruncationBudget) -> Result<EvalResult> {
    budget.validate()?;
    if !in_matsumoto_domain(args) {
        return Err(MzError::Domain(format!(
            "zeta{args} is outside the absolute-convergence domain"
        )));
    }
    if args.depth() == 1 {
        return riemann_zeta(args.entries()[0], budget).map(|mut r| {
            r.method = Method::DirectSeries;
            r
        });
    }
    let order = tail_order(budget);
    let mut n = initial_truncation(args, order).min(budget.outer_max);
    let mut best = nested_at(args, n, budget)?;
    loop {
        if best.err_bound <= budget.tol {
            return Ok(best);
        }
        if n >= budget.outer_max {
            break;
        }
        n = (n * 2).min(budget.outer_max);
        let next = nested_at(args, n, budget)?;
        let stalled = next.err_bound > 0.5 * best.err_bound;
        best = next;
        if stalled && best.err_bound > budget.tol {
            break;
        }
    }
    Err(MzError::budget(
        format!(
            "zeta{args}: error {:e} above tol {:e}",
            best.err_bound, budget.tol
        ),
        best,
    ))
}
