//! `G_{a,b}`: the inductively defined sums of depth `a + b` MZFs, by literal
//! recursion and by the closed window form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::report::{ReportBuilder, VerificationReport};
use super::window::{f_d, WindowDp};
use crate::accel::{sum_series, ErrorModel, SeriesPlan};
use crate::budget::TruncationBudget;
use crate::error::{MzError, Result};
use crate::mzf::{in_matsumoto_domain, mzf_direct, mzf_eval, ArgVector};
use crate::numkernel::{ensure_finite, pow_neg, riemann_zeta, CompensatedSum};
use crate::result::{EvalResult, Method};

/// Default bound on `a + b` for the recursion.
pub const DEFAULT_DEPTH_CAP: usize = 4;

/// Arguments of `G_{a,b}(s_1, ..., s_a; s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GabSpec {
    pub prefix: Vec<Complex64>,
    pub s: Complex64,
    pub b: u32,
}

impl GabSpec {
    pub fn new(prefix: Vec<Complex64>, s: Complex64, b: u32) -> Result<Self> {
        if b < 1 {
            return Err(MzError::Precondition("G_{a,b} needs b >= 1".into()));
        }
        for &z in prefix.iter().chain(std::iter::once(&s)) {
            ensure_finite(z, "G_{a,b} argument")?;
        }
        Ok(GabSpec { prefix, s, b })
    }

    pub fn a(&self) -> usize {
        self.prefix.len()
    }

    fn with_last(&self, last: Complex64) -> Vec<Complex64> {
        let mut v = self.prefix.clone();
        v.push(last);
        v
    }

    /// Lower bound on `Re(s)` used as the working domain.
    pub fn working_bound(&self) -> f64 {
        if self.a() == 0 && self.b == 2 {
            1.0
        } else if self.b == 1 {
            f64::NEG_INFINITY
        } else {
            self.b as f64 + 1.0
        }
    }
}

fn term_budget(budget: &TruncationBudget) -> TruncationBudget {
    budget.with_tol((budget.tol * 1e-4).max(1e-13))
}

fn error_model(spec: &GabSpec) -> ErrorModel {
    // one family per suffix of the prefix: s - 1 + sum_{i >= j} (s_i - 1)
    let mut families = vec![(spec.s - 1.0, spec.b.saturating_sub(2))];
    let mut shift = Complex64::new(0.0, 0.0);
    for &p in spec.prefix.iter().rev() {
        shift += p - 1.0;
        families.push((spec.s - 1.0 + shift, spec.b.saturating_sub(2)));
    }
    ErrorModel::from_families(&families, 6)
}

fn recurse(spec: &GabSpec, budget: &TruncationBudget) -> Result<EvalResult> {
    if spec.b == 1 {
        return mzf_eval(&ArgVector::new(spec.with_last(spec.s))?, budget);
    }
    let inner = term_budget(budget);
    let b = spec.b as f64;
    let term = |n: usize| -> Result<Complex64> {
        let nf = n as f64;
        let up = GabSpec {
            prefix: spec.with_last(spec.s - nf - b),
            s: Complex64::new(nf + b, 0.0),
            b: spec.b - 1,
        };
        let down = GabSpec {
            prefix: spec.with_last(Complex64::new(-nf, 0.0)),
            s: spec.s + nf,
            b: spec.b - 1,
        };
        Ok(recurse(&up, &inner)?.value - recurse(&down, &inner)?.value)
    };
    let plan = SeriesPlan::new(8, error_model(spec));
    let (r, _) = sum_series(term, &plan, budget)?;
    let err = r.err_bound + 2.0 * r.terms_used as f64 * inner.tol;
    Ok(EvalResult::new(r.value, err, r.terms_used, r.method))
}

/// `G_{a,b}` by its defining recursion, every outer `n`-series accelerated.
pub fn g_ab_recursive(
    spec: &GabSpec,
    depth_cap: usize,
    budget: &TruncationBudget,
) -> Result<EvalResult> {
    budget.validate()?;
    let depth = spec.a() + spec.b as usize;
    if depth > depth_cap {
        return Err(MzError::Precondition(format!(
            "G_{{{},{}}} has depth {depth} above the cap {depth_cap}",
            spec.a(),
            spec.b
        )));
    }
    if spec.s.re <= spec.working_bound() {
        return Err(MzError::Domain(format!(
            "G_{{{},{}}} recursion works for Re(s) > {}, got s = {}",
            spec.a(),
            spec.b,
            spec.working_bound(),
            spec.s
        )));
    }
    recurse(spec, budget)
}

/// `G_{a,b}` through the closed window form (`b >= 2`):
/// `sum_{m_1 < ... < m_a < m} prod m_i^{-s_i} m^{-(s-b+1)} h_{b-1}(1/(m-m_a), ..., 1/m)`.
pub fn g_ab_closed(spec: &GabSpec, budget: &TruncationBudget) -> Result<EvalResult> {
    budget.validate()?;
    if spec.b < 2 {
        return Err(MzError::Precondition("closed form needs b >= 2".into()));
    }
    let d = spec.b as usize - 1;
    if spec.s.re <= spec.b as f64 + 1.0 {
        return Err(MzError::Domain(format!(
            "closed form works for Re(s) > {}, got s = {}",
            spec.b + 1,
            spec.s
        )));
    }
    if spec.a() == 0 {
        return f_d(d, 0, spec.s, budget);
    }
    let shifted = ArgVector::new(spec.with_last(spec.s - d as f64))?;
    if !in_matsumoto_domain(&shifted) {
        return Err(MzError::Domain(format!(
            "closed form needs zeta{shifted} inside the absolute-convergence domain"
        )));
    }

    let exponent = spec.s - d as f64;
    let mut m_max = 256u64;
    let cap = budget.outer_max.max(512) as u64;
    let mut prev: Option<Complex64> = None;
    loop {
        // q[t] = sum_{m_1 < ... < m_a = t} prod m_i^{-s_i}
        let mut q = vec![Complex64::new(0.0, 0.0); m_max as usize];
        let mut levels = vec![Complex64::new(0.0, 0.0); spec.a()];
        for t in 1..m_max {
            let mut below = Complex64::new(1.0, 0.0);
            let mut next = levels.clone();
            for (j, &sj) in spec.prefix.iter().enumerate() {
                let w = pow_neg(t as f64, sj);
                let add = below * w;
                below = levels[j];
                next[j] += add;
                if j == spec.a() - 1 {
                    q[t as usize] = add;
                }
            }
            levels = next;
        }
        let mut acc = CompensatedSum::new();
        let mut abs_sum = 0.0;
        for m in 2..=m_max {
            let mut dp = WindowDp::new(d);
            dp.push(m);
            let mut inner = Complex64::new(0.0, 0.0);
            for t in 1..m {
                dp.push(m - t);
                inner += q[t as usize] * dp.value();
            }
            let term = inner * pow_neg(m as f64, exponent);
            abs_sum += term.norm();
            acc.add(term);
        }
        let value = acc.finish()?;
        if let Some(p) = prev {
            let err = (value - p).norm() + 8.0 * f64::EPSILON * abs_sum;
            let res = EvalResult::new(value, err, m_max, Method::DirectSeries);
            if err <= budget.tol {
                return Ok(res);
            }
            if m_max >= cap {
                return Err(MzError::budget(
                    format!("G_ab closed form: error {err:e} above tol"),
                    res,
                ));
            }
        }
        prev = Some(value);
        m_max = (m_max * 2).min(cap);
    }
}

/// Checks `G_{0,b}(s) = zeta(s)`.
pub fn theorem2_check(
    b: u32,
    s: Complex64,
    budget: &TruncationBudget,
) -> Result<VerificationReport> {
    let spec = GabSpec::new(Vec::new(), s, b)?;
    let rep = ReportBuilder::start()
        .param("b", b)
        .param("s", s)
        .param("working_domain", format!("Re(s) > {}", b + 1));
    if s.re <= b as f64 + 1.0 {
        return Err(MzError::Domain(format!(
            "working domain is Re(s) > {}, got s = {s}",
            b + 1
        )));
    }
    let lhs = if b == 1 {
        mzf_direct(&ArgVector::new(vec![s])?, budget)?
    } else {
        g_ab_closed(&spec, budget)?
    };
    let rhs = riemann_zeta(s, budget)?;
    Ok(rep.finish("theorem2", lhs, rhs, budget.tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::cx;
    use crate::sumformula::composition_sum;

    fn b() -> TruncationBudget {
        TruncationBudget::default()
    }

    #[test]
    fn base_case_is_mzf() {
        let spec = GabSpec::new(vec![cx(2.0, 0.0)], cx(3.0, 0.0), 1).unwrap();
        let g = g_ab_recursive(&spec, 4, &b()).unwrap();
        let z = mzf_direct(&ArgVector::from_reals(&[2.0, 3.0]).unwrap(), &b()).unwrap();
        assert_eq!(g.value, z.value);
    }

    #[test]
    fn closed_form_trivial_window() {
        for bb in 2..=4 {
            let spec = GabSpec::new(vec![], cx(6.0, 0.0), bb).unwrap();
            let g = g_ab_closed(&spec, &b()).unwrap();
            assert!(
                (g.value.re - 1.017343061984449).abs() < 1e-10,
                "b={bb}: {g:?}"
            );
        }
    }

    #[test]
    fn closed_form_matches_recursion_a1_b2() {
        let spec = GabSpec::new(vec![cx(3.0, 0.0)], cx(5.0, 0.0), 2).unwrap();
        let bb = b().with_tol(1e-8);
        let c = g_ab_closed(&spec, &bb).unwrap();
        let r = g_ab_recursive(&spec, 4, &bb).unwrap();
        assert!(c.agrees_with(&r, 1e-12), "{c:?} vs {r:?}");
        // finite-sum form: zeta(3,1,4) + zeta(3,2,3) + zeta(3,3,2)
        let f = composition_sum(&[cx(3.0, 0.0)], 2, 5, &bb).unwrap();
        assert!(c.agrees_with(&f, 1e-12), "{c:?} vs {f:?}");
    }

    #[test]
    fn theorem2_examples() {
        let bb = b().with_tol(1e-8);
        assert!(theorem2_check(1, cx(3.0, 0.0), &bb).unwrap().passed);
        assert!(theorem2_check(2, cx(5.0, 0.0), &bb).unwrap().passed);
        let rep = theorem2_check(3, cx(6.0, 0.0), &bb).unwrap();
        assert!(rep.passed);
        let f = composition_sum(&[], 3, 6, &bb).unwrap();
        assert!(rep.lhs.agrees_with(&f, 1e-8));
    }

    #[test]
    fn depth_cap_and_domain() {
        let spec = GabSpec::new(vec![cx(3.0, 0.0); 3], cx(9.0, 0.0), 2).unwrap();
        assert!(matches!(
            g_ab_recursive(&spec, 4, &b()),
            Err(MzError::Precondition(_))
        ));
        let spec = GabSpec::new(vec![], cx(3.5, 0.0), 3).unwrap();
        assert!(matches!(
            g_ab_recursive(&spec, 4, &b()),
            Err(MzError::Domain(_))
        ));
    }
}
