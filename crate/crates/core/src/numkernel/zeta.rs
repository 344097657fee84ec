use std::f64::consts::PI;

use num_complex::Complex64;

use super::{
    bernoulli_over_factorial, ensure_finite, pole_check, pow_neg, CompensatedSum, ExtComplex,
    MAX_EM_TERMS,
};
use crate::budget::TruncationBudget;
use crate::error::{MzError, Result};
use crate::result::{EvalResult, Method};

/// Minimum expansion order used for nested-sum tails.
pub(crate) const TAIL_ORDER_MIN: usize = 20;

/// Smallest expansion point at which an order-`order` Euler-Maclaurin series for
/// an exponent of modulus `u_abs` has terms shrinking to ~1e-16 relative.
///
/// Successive corrections shrink roughly by `(|u| + q) / (2 pi N)`.
pub(crate) fn em_threshold(u_abs: f64, order: usize, base: usize) -> usize {
    let k = order.max(1) as f64;
    let ratio = (1e-16 * PI).powf(1.0 / k);
    let t = ((u_abs + k) / (2.0 * PI * ratio)).ceil();
    (t as usize).max(base).max(1)
}

/// Euler-Maclaurin coefficients of `Z_N(u) = sum_{t>N} t^{-u}` at a fixed `N`,
/// pre-multiplied by `N^{-i}`:
///
/// `Z_N(u) = N^{1-u} (1/(u-1) - 1/(2N) + sum_{q>=1} (u)_q B_{q+1}/(q+1)! N^{-q-1})`.
fn power_terms(u: Complex64, n: f64, len: usize) -> Result<Vec<Complex64>> {
    pole_check(u, 1.0, || "sum_{t>N} t^{-u}".to_string())?;
    let mut out = Vec::with_capacity(len);
    out.push(1.0 / (u - 1.0));
    if len > 1 {
        out.push(Complex64::new(-0.5 / n, 0.0));
    }
    // p = (u)_q / N^q
    let mut p = Complex64::new(1.0, 0.0);
    for q in 1..len.saturating_sub(1) {
        p = p * (u + (q - 1) as f64) / n;
        out.push(p * (bernoulli_over_factorial(q + 1) / n));
    }
    Ok(out)
}

/// Asymptotic expansion of a nested tail
/// `Z_N(u_1, ..., u_k) = sum_{N < t_1 < ... < t_k} t_1^{-u_1} ... t_k^{-u_k}`
/// at a fixed truncation point `N`, as `N^gamma * sum_i terms[i]`.
///
/// Built right-to-left: the innermost tail is an Euler-Maclaurin series in
/// powers of `N`, and each prepended variable maps every power `t^{g-i}` to
/// another power tail.
#[derive(Debug, Clone)]
pub struct TailExpansion {
    n: f64,
    gamma: Complex64,
    terms: Vec<Complex64>,
    order: usize,
}

impl TailExpansion {
    /// Expansion of `sum_{t>N} t^{-u}` with `order + 1` retained terms.
    pub fn power(u: Complex64, n: usize, order: usize) -> Result<Self> {
        if order > MAX_EM_TERMS {
            return Err(MzError::Capacity {
                requested: order + 3,
                capacity: super::BERNOULLI_CAPACITY,
            });
        }
        let n = n as f64;
        Ok(TailExpansion {
            n,
            gamma: 1.0 - u,
            terms: power_terms(u, n, order + 3)?,
            order,
        })
    }

    /// Expansion of `sum_{N < t} t^{-u1} Z_t(rest)` given the expansion of `Z_t(rest)`.
    pub fn prepend(&self, u1: Complex64) -> Result<Self> {
        let len = self.terms.len();
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (i, a) in self.terms.iter().enumerate() {
            let w = u1 - self.gamma + i as f64;
            let e = power_terms(w, self.n, len - i).map_err(|_| MzError::Pole {
                factor: "nested tail (argument on a divergence hyperplane)".into(),
                point: format!("{w}"),
            })?;
            for (j, ej) in e.iter().enumerate() {
                out[i + j] += a * ej;
            }
        }
        Ok(TailExpansion {
            n: self.n,
            gamma: self.gamma + 1.0 - u1,
            terms: out,
            order: self.order,
        })
    }

    /// The same expansion with its first `count` terms removed and the sign flipped.
    ///
    /// Applied to the power-tail expansion this gives the Euler-Maclaurin
    /// remainder beyond order `count - 2`.
    pub fn negated_remainder(&self, count: usize) -> Self {
        let mut out = self.clone();
        for (i, t) in out.terms.iter_mut().enumerate() {
            *t = if i < count {
                Complex64::new(0.0, 0.0)
            } else {
                -*t
            };
        }
        out
    }

    /// Retained terms, each already multiplied by its power of `N^{-1}`.
    pub fn terms(&self) -> &[Complex64] {
        &self.terms
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// `N^gamma` in extended range.
    pub fn scale(&self) -> ExtComplex {
        ExtComplex::exp(self.gamma * self.n.ln())
    }

    /// Sum of the retained terms and an error estimate for it (twice the
    /// largest of the first two omitted terms), both without the `N^gamma` factor.
    pub fn sum(&self) -> (Complex64, f64) {
        let mut acc = CompensatedSum::new();
        for t in &self.terms[..=self.order] {
            acc.add(*t);
        }
        let omitted = self.terms[self.order + 1..]
            .iter()
            .map(|t| t.norm())
            .fold(0.0, f64::max);
        let v = acc.value();
        (v, 2.0 * omitted + 4.0 * f64::EPSILON * v.norm())
    }

    /// Value and absolute error in extended range.
    pub fn value(&self) -> (ExtComplex, ExtComplex) {
        let (s, e) = self.sum();
        let scale = self.scale();
        (
            scale * s,
            ExtComplex::exp(Complex64::new(scale.ln_norm(), 0.0)) * Complex64::new(e, 0.0),
        )
    }
}

/// Riemann zeta by Euler-Maclaurin summation:
/// `sum_{n<=M} n^{-s}` plus the order-`L` expansion of `sum_{n>M} n^{-s}`.
pub fn riemann_zeta(s: Complex64, budget: &TruncationBudget) -> Result<EvalResult> {
    ensure_finite(s, "riemann_zeta argument")?;
    pole_check(s, 1.0, || "zeta(s)".to_string())?;
    let mut order = budget.em_terms.max(1);
    if s.re <= -(order as f64) {
        order = (-s.re).floor() as usize + 1;
        if order > MAX_EM_TERMS {
            return Err(MzError::Domain(format!(
                "zeta({s}): Re(s) <= -{MAX_EM_TERMS} is outside the Euler-Maclaurin range"
            )));
        }
    }
    let m = em_threshold(s.norm(), order, budget.em_base);
    if m > budget.inner_max {
        return Err(MzError::Domain(format!(
            "zeta({s}) needs {m} direct terms, above inner_max {}",
            budget.inner_max
        )));
    }
    let mut partial = CompensatedSum::new();
    let mut abs_sum = 0.0;
    for n in 1..=m {
        let t = pow_neg(n as f64, s);
        abs_sum += t.norm();
        partial.add(t);
    }
    let tail = TailExpansion::power(s, m, order)?;
    let (t_sum, t_err) = tail.sum();
    let scale = pow_neg(m as f64, s - 1.0);
    let tail_val = scale * t_sum;
    let value = ensure_finite(partial.finish()? + tail_val, "riemann_zeta")?;
    let err = scale.norm() * t_err + 4.0 * f64::EPSILON * (abs_sum + tail_val.norm());
    Ok(EvalResult::new(
        value,
        err,
        (m + order) as u64,
        Method::EulerMaclaurin,
    ))
}

/// Scaled tail `W(u, m) = m^u sum_{t>m} t^{-u} = sum_{t>m} (m/t)^u` for `m >= 1`,
/// returned with an absolute error estimate.
///
/// Direct summation up to the Euler-Maclaurin threshold, then the expansion.
/// For `Re(u) > 1` the direct part stops once the remainder is negligible.
pub fn scaled_power_tail(
    u: Complex64,
    m: usize,
    order: usize,
    base: usize,
    inner_max: usize,
) -> Result<(Complex64, f64)> {
    assert!(m >= 1, "scaled_power_tail needs m >= 1");
    let threshold = em_threshold(u.norm(), order, base);
    if m >= threshold {
        return em_scaled_tail(u, m, order);
    }
    if threshold - m > inner_max {
        return Err(MzError::budget(
            format!("power tail at u={u} needs {} direct terms", threshold - m),
            EvalResult::new(Complex64::new(0.0, 0.0), f64::MAX, 0, Method::DirectSeries),
        ));
    }
    let ln_m = (m as f64).ln();
    let sigma = u.re;
    let real = u.im == 0.0;
    let mut acc = CompensatedSum::new();
    for t in m + 1..threshold {
        let lr = ln_m - (t as f64).ln();
        let term = if real {
            Complex64::new((sigma * lr).exp(), 0.0)
        } else {
            (u * lr).exp()
        };
        acc.add(term);
        if sigma > 1.0 {
            let rest = term.norm() * (1.0 + t as f64 / (sigma - 1.0));
            if rest <= 1e-17 * acc.value().norm() {
                let v = acc.finish()?;
                return Ok((v, rest + 4.0 * f64::EPSILON * v.norm()));
            }
        }
    }
    let (w_t, e_t) = em_scaled_tail(u, threshold, order)?;
    let lr = ln_m - (threshold as f64).ln();
    let factor = (u * lr).exp();
    acc.add(factor * (1.0 + w_t));
    let v = acc.finish()?;
    Ok((v, factor.norm() * e_t + 4.0 * f64::EPSILON * v.norm()))
}

fn em_scaled_tail(u: Complex64, m: usize, order: usize) -> Result<(Complex64, f64)> {
    let tail = TailExpansion::power(u, m, order)?;
    let (s, e) = tail.sum();
    let mf = m as f64;
    Ok((s * mf, e * mf))
}

/// `sum_{m>a} m^{-s}` (continued analytically through Euler-Maclaurin when Re(s) <= 1).
pub fn power_tail(s: Complex64, a: u64, budget: &TruncationBudget) -> Result<EvalResult> {
    ensure_finite(s, "power_tail argument")?;
    pole_check(s, 1.0, || "sum_{m>a} m^{-s}".to_string())?;
    if a == 0 {
        return riemann_zeta(s, budget);
    }
    let order = budget.em_terms.max(1);
    let (w, e) = scaled_power_tail(s, a as usize, order, budget.em_base, budget.inner_max)?;
    let f = pow_neg(a as f64, s);
    let value = ensure_finite(f * w, "power_tail")?;
    let terms = em_threshold(s.norm(), order, budget.em_base).saturating_sub(a as usize) + order;
    Ok(EvalResult::new(
        value,
        f.norm() * e,
        terms as u64,
        Method::EulerMaclaurin,
    ))
}
