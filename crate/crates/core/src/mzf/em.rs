//! Depth-2 continuation by Euler-Maclaurin summation of the inner variable.
//!
//! With `phi_l(n, s)` the remainder of the order-`l` Euler-Maclaurin
//! approximation of `sum_{k<=n} k^{-s}`,
//!
//! ```text
//! zeta(s1, s2) = zeta(s1+s2-1)/(s2-1) - zeta(s1+s2)/2
//!              + sum_{q=1}^{l} (s2)_q B_{q+1}/(q+1)! zeta(s1+s2+q)
//!              - sum_{n>=1} phi_l(n, s2) n^{-s1}
//! ```
//!
//! and the remainder series converges once `Re(s1+s2) > -l`.

use num_complex::Complex64;

use super::direct::tail_order;
use crate::budget::TruncationBudget;
use crate::error::{MzError, Result};
use crate::numkernel::{
    bernoulli_over_factorial, em_threshold, ensure_finite, pochhammer, pole_check, pow_neg,
    riemann_zeta, scaled_power_tail, CompensatedSum, TailExpansion, MAX_EM_TERMS,
};
use crate::result::{EvalResult, Method};

/// Value of `phi_l(m, s)` with numerical-health flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiValue {
    pub value: Complex64,
    /// The subtraction lost more than ~1000 ulps relative to its largest operand.
    pub cancellation: bool,
    /// The remainder estimate was below `tol / 10`, so the value was set to 0.
    pub negligible: bool,
}

/// `phi_l(m, s)` by direct subtraction of the Euler-Maclaurin approximation
/// from the (compensated) partial sum.
pub fn phi_l(m: u64, s: Complex64, l: usize, budget: &TruncationBudget) -> Result<PhiValue> {
    ensure_finite(s, "phi_l argument")?;
    pole_check(s, 1.0, || {
        "phi_l(m, s) (through zeta(s) and 1/(s-1))".to_string()
    })?;
    if m == 0 {
        return Err(MzError::Precondition("phi_l needs m >= 1".into()));
    }
    if l > MAX_EM_TERMS {
        return Err(MzError::Capacity {
            requested: l + 1,
            capacity: crate::numkernel::BERNOULLI_CAPACITY,
        });
    }
    let mf = m as f64;

    // first omitted correction q > l with B_{q+1} != 0
    let q_next = if l.is_multiple_of(2) { l + 1 } else { l + 2 };
    if mf >= s.norm() + q_next as f64 + 2.0 {
        let next = pochhammer(s, q_next)
            * bernoulli_over_factorial(q_next + 1)
            * pow_neg(mf, s + q_next as f64);
        if next.norm() < budget.tol / 10.0 {
            return Ok(PhiValue {
                value: Complex64::new(0.0, 0.0),
                cancellation: false,
                negligible: true,
            });
        }
    }

    let mut partial = CompensatedSum::new();
    for n in 1..=m {
        partial.add(pow_neg(n as f64, s));
    }
    let partial = partial.finish()?;
    let m_pow = pow_neg(mf, s); // m^{-s}
    let mut parts = vec![
        (m_pow * mf - 1.0) / (1.0 - s),
        m_pow / 2.0,
        riemann_zeta(s, budget)?.value,
        -1.0 / (s - 1.0),
    ];
    let mut p = Complex64::new(1.0, 0.0);
    for q in 1..=l {
        p *= s + (q - 1) as f64;
        let b = bernoulli_over_factorial(q + 1);
        if b != 0.0 {
            parts.push(-p * b * m_pow / mf.powi(q as i32));
        }
    }
    let mut bracket = CompensatedSum::new();
    bracket.extend(parts.iter().copied());
    let value = ensure_finite(partial - bracket.value(), "phi_l")?;
    let largest = parts
        .iter()
        .map(|z| z.norm())
        .fold(partial.norm(), f64::max);
    Ok(PhiValue {
        value,
        cancellation: value.norm() < 1e3 * f64::EPSILON * largest,
        negligible: false,
    })
}

/// Order `l` for the continuation: smallest `l >= 0` with `Re(s1+s2) + l > 1`,
/// plus a margin of 2, capped at `cap`.
pub fn choose_em_order(s1: Complex64, s2: Complex64, cap: usize) -> Result<usize> {
    let sigma = (s1 + s2).re;
    let minimal = if sigma > 1.0 {
        0
    } else {
        (1.0 - sigma).floor() as usize + 1
    };
    let l = (minimal + 2).min(cap);
    if sigma <= -(l as f64) {
        return Err(MzError::Domain(format!(
            "Re(s1+s2) = {sigma} is not above -{l}; the Euler-Maclaurin continuation needs a larger order"
        )));
    }
    Ok(l)
}

/// `n * (1/(u-1) - 1/(2n) + sum_{q=1}^{l} (u)_q B_{q+1}/(q+1)! n^{-q-1})`, the
/// order-`l` approximation of `W(u, n) = n^u sum_{t>n} t^{-u}`.
fn em_bracket(u: Complex64, n: usize, l: usize) -> Result<Complex64> {
    let e = TailExpansion::power(u, n, l)?;
    let mut acc = CompensatedSum::new();
    acc.extend(e.terms()[..l + 2].iter().copied());
    Ok(acc.value() * n as f64)
}

/// `sum_{n<=N} n^{-s1} phi_l(n, s2)` plus the completed tail, in the scaled form
/// `n^{-(s1+s2)} (em_bracket - W(s2, n))`.
fn remainder_series_at(
    s1: Complex64,
    s2: Complex64,
    l: usize,
    n_max: usize,
    budget: &TruncationBudget,
) -> Result<EvalResult> {
    let order = tail_order(budget).max(l + 2);
    let sum = s1 + s2;
    let threshold = em_threshold(s2.norm(), order, budget.em_base);
    let mut acc = CompensatedSum::new();
    let mut abs_sum = 0.0;
    let mut err = 0.0;
    for n in 1..=n_max {
        let (phi_scaled, phi_err) = if n >= threshold {
            let e = TailExpansion::power(s2, n, order)?.negated_remainder(l + 2);
            let (v, er) = e.sum();
            (v * n as f64, er * n as f64)
        } else {
            let (w, we) = scaled_power_tail(s2, n, order, budget.em_base, budget.inner_max)?;
            let b = em_bracket(s2, n, l)?;
            (b - w, we + 4.0 * f64::EPSILON * (b.norm() + w.norm()))
        };
        let f = pow_neg(n as f64, sum);
        let term = f * phi_scaled;
        acc.add(term);
        abs_sum += term.norm();
        err += f.norm() * phi_err;
    }
    let tail = TailExpansion::power(s2, n_max, order)?
        .negated_remainder(l + 2)
        .prepend(s1)?;
    let (tv, te) = tail.value();
    let tv = tv.to_complex()?;
    acc.add(tv);
    let value = acc.finish()?;
    err += te.norm() + 8.0 * f64::EPSILON * (abs_sum + tv.norm());
    Ok(EvalResult::new(
        value,
        err,
        n_max as u64,
        Method::EulerMaclaurin,
    ))
}

/// `zeta(s1, s2)` by the Euler-Maclaurin continuation.
pub fn mzf_depth2_em(
    s1: Complex64,
    s2: Complex64,
    budget: &TruncationBudget,
) -> Result<EvalResult> {
    budget.validate()?;
    ensure_finite(s1, "mzf_depth2_em s1")?;
    ensure_finite(s2, "mzf_depth2_em s2")?;
    let sum = s1 + s2;
    pole_check(s2, 1.0, || "1/(s2-1) factor".to_string())?;
    pole_check(sum, 2.0, || "zeta(s1+s2-1) factor".to_string())?;
    pole_check(sum, 1.0, || "zeta(s1+s2) factor".to_string())?;
    let l = choose_em_order(s1, s2, budget.em_terms)?;
    for q in 1..=l {
        if bernoulli_over_factorial(q + 1) != 0.0 {
            pole_check(sum + q as f64, 1.0, || format!("zeta(s1+s2+{q}) factor"))?;
        }
    }

    let z_shift = riemann_zeta(sum - 1.0, budget)?;
    let z_sum = riemann_zeta(sum, budget)?;
    let inv = 1.0 / (s2 - 1.0);
    let mut head = CompensatedSum::new();
    head.add(z_shift.value * inv);
    head.add(-z_sum.value / 2.0);
    let mut head_err = z_shift.err_bound * inv.norm() + z_sum.err_bound / 2.0;
    let mut head_abs = (z_shift.value * inv).norm() + z_sum.value.norm() / 2.0;
    let mut p = Complex64::new(1.0, 0.0);
    for q in 1..=l {
        p *= s2 + (q - 1) as f64;
        let b = bernoulli_over_factorial(q + 1);
        if b == 0.0 {
            continue;
        }
        let z = riemann_zeta(sum + q as f64, budget)?;
        let c = p * b;
        head.add(c * z.value);
        head_err += c.norm() * z.err_bound;
        head_abs += (c * z.value).norm();
    }
    let head = head.finish()?;

    let order = tail_order(budget).max(l + 2);
    let mut n = em_threshold(s2.norm().max(sum.norm() + 1.0), order, 64).min(budget.inner_max);
    let mut series = remainder_series_at(s1, s2, l, n, budget)?;
    let combine = |series: &EvalResult| {
        let value = head - series.value;
        EvalResult::new(
            value,
            head_err + series.err_bound + 4.0 * f64::EPSILON * (head_abs + series.value.norm()),
            series.terms_used + l as u64,
            Method::EulerMaclaurin,
        )
    };
    loop {
        if series.err_bound <= budget.tol {
            return Ok(combine(&series));
        }
        if n >= budget.inner_max {
            break;
        }
        n = (n * 2).min(budget.inner_max);
        let next = remainder_series_at(s1, s2, l, n, budget)?;
        let stalled = next.err_bound > 0.5 * series.err_bound;
        series = next;
        if stalled && series.err_bound > budget.tol {
            break;
        }
    }
    Err(MzError::budget(
        format!(
            "remainder series for zeta({s1}, {s2}) stalled at error {:e} (tol {:e})",
            series.err_bound, budget.tol
        ),
        combine(&series),
    ))
}
