//! Independent routes to `zeta(s)`: the telescoped double sum and the two
//! harmonic-number weighted sums.

use num_complex::Complex64;

use super::report::{ReportBuilder, VerificationReport};
use crate::accel::{richardson_extrapolate, ErrorModel};
use crate::budget::TruncationBudget;
use crate::error::{MzError, Result};
use crate::numkernel::{
    bernoulli_over_factorial, em_threshold, pochhammer, pow_neg, power_tail, riemann_zeta,
    CompensatedSum,
};
use crate::result::{EvalResult, Method};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `sum_{0 < m1 < m2 <= M} (m1^{2-s} - m2^{2-s}) / (m2^2 - m1 m2)`.
///
/// For `M >= 64` the tail past `M` is estimated by extrapolating the partial
/// sums at `M, M/2, M/4, ...` and added to the value; the error bound is the
/// change between the last two extrapolants. For smaller `M` the value is the
/// bare truncated sum and no useful bound is available (`err_bound = f64::MAX`).
pub fn telescoped_double_sum(
    s: Complex64,
    m_max: u64,
    budget: &TruncationBudget,
) -> Result<EvalResult> {
    budget.validate()?;
    if s.re <= 2.0 {
        return Err(MzError::Domain(format!(
            "telescoped double sum needs Re(s) > 2, got {s}"
        )));
    }
    if m_max == 0 {
        return Err(MzError::Precondition("M must be >= 1".into()));
    }
    let e = Complex64::new(2.0, 0.0) - s;
    let f: Vec<Complex64> = (0..=m_max)
        .map(|j| {
            if j == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                pow_neg(j as f64, -e)
            }
        })
        .collect();
    let mut marks: Vec<u64> = Vec::new();
    let mut c = m_max;
    while c >= 16 && marks.len() < 8 {
        marks.push(c);
        c /= 2;
    }
    marks.reverse();
    let mut checkpoints: Vec<(f64, Complex64)> = Vec::new();
    let mut acc = CompensatedSum::new();
    for m2 in 2..=m_max {
        let mut inner = CompensatedSum::new();
        for m1 in 1..m2 {
            inner.add((f[m1 as usize] - f[m2 as usize]) / (m2 - m1) as f64);
        }
        acc.add(inner.value() / m2 as f64);
        if marks.contains(&m2) {
            checkpoints.push((m2 as f64, acc.value()));
        }
    }
    let truncated = acc.finish()?;
    if m_max < 64 {
        return Ok(EvalResult::new(
            truncated,
            f64::MAX,
            m_max,
            Method::DirectSeries,
        ));
    }
    let model = ErrorModel::from_families(&[(Complex64::new(1.0, 0.0), 0), (s - 2.0, 1)], 6);
    let k_max = (checkpoints.len() - 1).min(model.len());
    let est = |k: usize| richardson_extrapolate(&checkpoints, &model, k).unwrap_or(truncated);
    let value = est(k_max);
    let prev = est(k_max - 1);
    let err = (value - prev).norm() + 1e3 * f64::EPSILON * value.norm();
    Ok(EvalResult::new(value, err, m_max, Method::Accelerated))
}

/// `sum_{m > M} ln(m) m^{-u}` by Euler-Maclaurin with `order` Bernoulli corrections.
fn log_power_tail(u: Complex64, m: u64, order: usize) -> (Complex64, f64) {
    let mf = m as f64;
    let ln = mf.ln();
    let w = u - 1.0;
    let base = pow_neg(mf, u);
    let mut acc = CompensatedSum::new();
    acc.add(base * mf * (ln / w + 1.0 / (w * w)));
    acc.add(-base * ln / 2.0);
    // f^{(j)}(x) = (-1)^j (u)_j x^{-u-j} (ln x - sum_{i<j} 1/(u+i)), j = 2k-1
    let mut last = 0.0;
    for k in 1..=order {
        let j = 2 * k - 1;
        let digamma_part: Complex64 = (0..j).map(|i| 1.0 / (u + i as f64)).sum();
        let deriv = -pochhammer(u, j) * base / mf.powi(j as i32) * (ln - digamma_part);
        let t = -bernoulli_over_factorial(2 * k) * deriv;
        acc.add(t);
        last = t.norm();
    }
    (acc.value(), 4.0 * last)
}

/// Two harmonic-number weighted sums, `sum H_m m^{1-s}` and `sum H_{m-1} m^{1-s}`,
/// each truncated at `M` with an asymptotic tail.
pub fn harmonic_form_sums(
    s: Complex64,
    m_max: u64,
    budget: &TruncationBudget,
) -> Result<(EvalResult, EvalResult)> {
    if s.re <= 2.0 {
        return Err(MzError::Domain(format!(
            "harmonic-number sums need Re(s) > 2, got {s}"
        )));
    }
    const ORDER: usize = 8;
    let u = s - 1.0;
    let m_max = m_max.max(em_threshold(u.norm() + 2.0 * ORDER as f64, ORDER, 64) as u64);
    let mut h = CompensatedSum::new();
    let mut with_m = CompensatedSum::new();
    let mut with_prev = CompensatedSum::new();
    for m in 1..=m_max {
        let h_prev = h.value().re;
        h.add(Complex64::new(1.0 / m as f64, 0.0));
        let w = pow_neg(m as f64, u);
        with_m.add(w * h.value().re);
        with_prev.add(w * h_prev);
    }
    // H_m = ln m + gamma + 1/(2m) - sum_k B_{2k}/(2k) m^{-2k}, H_{m-1} = H_m - 1/m
    let z = |v: Complex64| power_tail(v, m_max, budget);
    let (lt, lt_err) = log_power_tail(u, m_max, ORDER);
    let z_u = z(u)?;
    let z_u1 = z(u + 1.0)?;
    let mut common = CompensatedSum::new();
    common.add(lt);
    common.add(z_u.value * EULER_GAMMA);
    let mut err = lt_err + z_u.err_bound;
    for k in 1..=ORDER {
        let c = bernoulli_over_factorial(2 * k) * factorial(2 * k - 1);
        let zk = z(u + (2 * k) as f64)?;
        common.add(-zk.value * c);
        err += zk.err_bound * c.abs();
    }
    let common = common.value();
    let tail_m = common + z_u1.value / 2.0;
    let tail_prev = common - z_u1.value / 2.0;
    err += z_u1.err_bound;
    let round = |v: Complex64| 8.0 * f64::EPSILON * v.norm();
    let a = with_m.finish()? + tail_m;
    let b = with_prev.finish()? + tail_prev;
    Ok((
        EvalResult::new(a, err + round(a), m_max, Method::EulerMaclaurin),
        EvalResult::new(b, err + round(b), m_max, Method::EulerMaclaurin),
    ))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `sum H_m m^{-(s-1)} - sum H_{m-1} m^{-(s-1)} = zeta(s)`.
pub fn harmonic_form_identity(
    s: Complex64,
    m_max: u64,
    budget: &TruncationBudget,
) -> Result<VerificationReport> {
    let rep = ReportBuilder::start().param("s", s).param("M", m_max);
    let (a, b) = harmonic_form_sums(s, m_max, budget)?;
    let lhs = EvalResult::new(
        a.value - b.value,
        a.err_bound + b.err_bound,
        a.terms_used,
        Method::EulerMaclaurin,
    );
    let rhs = riemann_zeta(s, budget)?;
    Ok(rep.finish("harmonic_form", lhs, rhs, budget.tol))
}
