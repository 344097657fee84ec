//! Sliding-window sums `F_d(D, s)` and the telescoping identity relating `F_d` to `F_{d+1}`.

use num_complex::Complex64;

use super::report::{ReportBuilder, VerificationReport};
use crate::accel::{sum_series, ErrorModel, SeriesPlan};
use crate::budget::TruncationBudget;
use crate::error::{MzError, Result};
use crate::numkernel::{pow_neg, power_tail, CompensatedSum};
use crate::result::{EvalResult, Method};

/// Running complete homogeneous sums `h_0..h_d` of the reciprocals added so far.
#[derive(Debug, Clone)]
pub(crate) struct WindowDp {
    h: Vec<f64>,
}

impl WindowDp {
    pub(crate) fn new(d: usize) -> Self {
        let mut h = vec![0.0; d + 1];
        h[0] = 1.0;
        WindowDp { h }
    }

    pub(crate) fn push(&mut self, x: u64) {
        let y = 1.0 / x as f64;
        for j in 1..self.h.len() {
            self.h[j] += y * self.h[j - 1];
        }
    }

    pub(crate) fn value(&self) -> f64 {
        self.h[self.h.len() - 1]
    }
}

/// `sum_{lo <= x_1 <= ... <= x_d <= hi} 1/(x_1 ... x_d)` for `1 <= lo <= hi`.
pub fn window_sum(d: usize, lo: u64, hi: u64) -> f64 {
    let mut dp = WindowDp::new(d);
    for x in lo..=hi {
        dp.push(x);
    }
    dp.value()
}

/// Same sum by walking every nondecreasing tuple (odometer order).
pub fn window_sum_enumerated(d: usize, lo: u64, hi: u64) -> f64 {
    if d == 0 {
        return 1.0;
    }
    let mut x = vec![lo; d];
    let mut acc = CompensatedSum::new();
    loop {
        let prod: f64 = x.iter().map(|&v| v as f64).product();
        acc.add(Complex64::new(1.0 / prod, 0.0));
        // advance the rightmost digit that can move, then reset the ones after it
        let mut i = d;
        while i > 0 && x[i - 1] == hi {
            i -= 1;
        }
        if i == 0 {
            return acc.value().re;
        }
        x[i - 1] += 1;
        let v = x[i - 1];
        for xj in &mut x[i..] {
            *xj = v;
        }
    }
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `F_d(D, s) = sum_{m > D} m^{d-s} h_d(1/(m-D), ..., 1/m)`.
///
/// The tail past the truncation point uses that `m^d h_d` decreases to
/// `C(D+d, d)`; it is replaced by its midpoint estimate times `sum_{m>M} m^{-s}`.
pub fn f_d(d: usize, big_d: u64, s: Complex64, budget: &TruncationBudget) -> Result<EvalResult> {
    budget.validate()?;
    if d == 0 {
        return Err(MzError::Precondition("F_d needs d >= 1".into()));
    }
    if s.re <= 1.0 {
        return Err(MzError::Domain(format!(
            "F_{d}({big_d}, s) needs Re(s) > 1, got s = {s}"
        )));
    }
    let limit = binomial(big_d + d as u64, d as u64);
    let g = |m: u64| -> f64 {
        let mut dp = WindowDp::new(d);
        for x in m - big_d..=m {
            dp.push(x);
        }
        dp.value() * (m as f64).powi(d as i32)
    };
    let mut acc = CompensatedSum::new();
    let mut next = big_d + 1;
    let mut m_max = (64 * (big_d + 1)).max(64);
    loop {
        for m in next..=m_max {
            acc.add(pow_neg(m as f64, s) * g(m));
        }
        next = m_max + 1;
        let upper = g(m_max + 1);
        let z = power_tail(s, m_max, budget)?;
        let z_abs = power_tail(Complex64::new(s.re, 0.0), m_max, budget)?;
        let half_gap = (upper - limit) / 2.0;
        let tail = z.value * (upper + limit) / 2.0;
        let err = half_gap * z_abs.value.re + upper * (z.err_bound + z_abs.err_bound);
        if err <= budget.tol / 2.0 || m_max as usize >= budget.inner_max {
            let value = acc.finish()? + tail;
            let err = err + 4.0 * f64::EPSILON * value.norm() * (acc.count() as f64).sqrt();
            if err > budget.tol {
                return Err(MzError::budget(
                    format!("F_{d}({big_d}, {s}): error {err:e} above tol"),
                    EvalResult::new(value, err, m_max, Method::DirectSeries),
                ));
            }
            return Ok(EvalResult::new(value, err, m_max, Method::DirectSeries));
        }
        m_max = (m_max * 2).min(budget.inner_max as u64);
    }
}

/// Terms `T_n`, `n < n_max`, of the left side of the `F_d -> F_{d+1}` identity,
/// `T_n = sum_{D < t} [t^{n+d+2-s} F_d(t, n+d+2) - t^n F_d(t, s+n)]`,
/// with the inner `m`-sums truncated at `m_max`; also returns the terms at `m_max / 2`.
fn lemma31_terms(
    d: usize,
    big_d: u64,
    s: Complex64,
    n_max: usize,
    m_max: u64,
) -> (Vec<Complex64>, Vec<Complex64>, f64) {
    let mut t_full = vec![Complex64::new(0.0, 0.0); n_max];
    let mut t_half = t_full.clone();
    let mut abs_sum = 0.0;
    let first_exp = Complex64::new(d as f64 + 2.0, 0.0) - s;
    let t_pows: Vec<Complex64> = (0..=m_max)
        .map(|t| {
            if t == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                pow_neg(t as f64, -first_exp)
            }
        })
        .collect();
    for m in big_d + 2..=m_max {
        let mf = m as f64;
        let m_pow = pow_neg(mf, s - d as f64);
        let inv_m2 = 1.0 / (mf * mf);
        let mut dp = WindowDp::new(d);
        for x in m - big_d..=m {
            dp.push(x);
        }
        for t in big_d + 1..m {
            dp.push(m - t);
            let c = (t_pows[t as usize] * inv_m2 - m_pow) * dp.value();
            let cn = c.norm();
            let rho = t as f64 / mf;
            let mut p = 1.0;
            for tn in t_full.iter_mut() {
                let v = c * p;
                *tn += v;
                abs_sum += cn * p;
                p *= rho;
                if cn * p * mf < 1e-24 {
                    break;
                }
            }
        }
        if m == m_max / 2 {
            t_half.clone_from(&t_full);
        }
    }
    (t_full, t_half, abs_sum)
}

/// Accelerated left side of the `F_d -> F_{d+1}` identity.
pub fn lemma31_lhs(
    d: usize,
    big_d: u64,
    s: Complex64,
    budget: &TruncationBudget,
) -> Result<EvalResult> {
    budget.validate()?;
    if d == 0 {
        return Err(MzError::Precondition("identity needs d >= 1".into()));
    }
    if s.re <= d as f64 + 3.0 {
        return Err(MzError::Domain(format!(
            "working domain is Re(s) > {}, got s = {s}",
            d + 3
        )));
    }
    let n_max = budget.outer_max.min(512);
    let series = budget.with_outer_max(n_max);
    let model = ErrorModel::from_families(&[(s - d as f64 - 1.0, d as u32)], 6);
    let plan = SeriesPlan::new(8, model);
    let m_cap = (budget.inner_max as u64).min(1 << 13);
    let mut m_max = 1024u64.min(m_cap);
    loop {
        let (full, half, abs_sum) = lemma31_terms(d, big_d, s, n_max, m_max);
        let (a, _) = sum_series(|n| Ok(full[n]), &plan, &series)?;
        let (b, _) = sum_series(|n| Ok(half[n]), &plan, &series)?;
        let trunc = (a.value - b.value).norm();
        let err = a.err_bound + trunc + 8.0 * f64::EPSILON * abs_sum;
        let res = EvalResult::new(a.value, err, m_max * a.terms_used, Method::Accelerated);
        if err <= budget.tol || m_max >= m_cap {
            return if err <= budget.tol {
                Ok(res)
            } else {
                Err(MzError::budget(
                    format!("F_d telescoping left side: error {err:e} above tol"),
                    res,
                ))
            };
        }
        m_max = (m_max * 2).min(m_cap);
    }
}

/// Checks `sum_n sum_{D<t} [...] = F_{d+1}(D, s)`.
pub fn lemma31_check(
    d: usize,
    big_d: u64,
    s: Complex64,
    budget: &TruncationBudget,
) -> Result<VerificationReport> {
    let rep = ReportBuilder::start()
        .param("d", d)
        .param("D", big_d)
        .param("s", s)
        .param("working_domain", format!("Re(s) > {}", d + 3));
    let lhs = lemma31_lhs(d, big_d, s, budget)?;
    let rhs = f_d(d + 1, big_d, s, budget)?;
    Ok(rep.finish("lemma31", lhs, rhs, budget.tol))
}
