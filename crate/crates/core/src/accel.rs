//! Acceleration of slowly converging series from partial sums taken at
//! geometrically spaced checkpoints `N0, 2 N0, 4 N0, ...`.
//!
//! Richardson extrapolation here is the generalized form: the truncation
//! error `S - S_N` is modelled as a combination of basis functions
//! `N^{-e} (ln N)^k` with possibly complex exponents `e`, and the limit is
//! obtained by solving the small linear system through the last few
//! checkpoints. With the model `{1, 2, 3, ...}` this is classical Richardson.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::budget::{Accel, TruncationBudget};
use crate::error::{MzError, Result};
use crate::numkernel::CompensatedSum;
use crate::result::{EvalResult, Method};

/// One basis function `N^{-exponent} (ln N)^log_power`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorTerm {
    pub exponent: Complex64,
    pub log_power: u32,
}

impl ErrorTerm {
    fn eval(&self, n: f64) -> Complex64 {
        let ln = n.ln();
        (-self.exponent * ln).exp() * ln.powi(self.log_power as i32)
    }
}

/// Ordered list of basis functions for the truncation error of partial sums.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorModel {
    terms: Vec<ErrorTerm>,
}

impl ErrorModel {
    /// `N^{-1}, N^{-2}, ..., N^{-count}`.
    pub fn integer_powers(count: usize) -> Self {
        Self::from_families(&[(Complex64::new(1.0, 0.0), 0)], count)
    }

    /// Merges arithmetic families `{e, e+1, e+2, ...}` (each with a maximum log
    /// power) and keeps the `count` slowest-decaying basis functions, ordered by
    /// real part of the exponent. Coinciding exponents get increasing log powers.
    pub fn from_families(families: &[(Complex64, u32)], count: usize) -> Self {
        let mut candidates: Vec<ErrorTerm> = Vec::new();
        for &(start, max_log) in families {
            for j in 0..count {
                let e = start + j as f64;
                for _ in 0..=max_log {
                    let k = candidates
                        .iter()
                        .filter(|t| (t.exponent - e).norm() < 1e-9)
                        .count() as u32;
                    candidates.push(ErrorTerm {
                        exponent: e,
                        log_power: k,
                    });
                }
            }
        }
        // Stable sort: among equal exponents, higher log powers dominate, so put them first.
        candidates.sort_by(|a, b| {
            a.exponent
                .re
                .partial_cmp(&b.exponent.re)
                .unwrap()
                .then(b.log_power.cmp(&a.log_power))
        });
        candidates.truncate(count);
        ErrorModel { terms: candidates }
    }

    pub fn terms(&self) -> &[ErrorTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Solves the dense complex system `a x = b` by Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv =
            (col..n).max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap())?;
        if a[piv][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Limit estimate through the last `k + 1` checkpoints using the first `k` basis functions.
pub fn richardson_extrapolate(
    points: &[(f64, Complex64)],
    model: &ErrorModel,
    k: usize,
) -> Option<Complex64> {
    let k = k.min(model.len());
    if points.len() < k + 1 {
        return None;
    }
    let pts = &points[points.len() - (k + 1)..];
    let n_ref = pts[pts.len() - 1].0;
    // Columns are scaled by their value at the last checkpoint.
    let scales: Vec<Complex64> = model.terms[..k].iter().map(|t| t.eval(n_ref)).collect();
    let a: Vec<Vec<Complex64>> = pts
        .iter()
        .map(|&(n, _)| {
            std::iter::once(Complex64::new(1.0, 0.0))
                .chain(
                    model.terms[..k]
                        .iter()
                        .zip(&scales)
                        .map(|(t, s)| t.eval(n) / s),
                )
                .collect()
        })
        .collect();
    let b: Vec<Complex64> = pts.iter().map(|p| p.1).collect();
    solve(a, b).map(|x| x[0])
}

/// Iterated Aitken delta-squared applied to a sequence; returns the final estimate.
pub fn aitken(seq: &[Complex64]) -> Option<Complex64> {
    if seq.is_empty() {
        return None;
    }
    let mut cur: Vec<Complex64> = seq.to_vec();
    while cur.len() >= 3 {
        let next: Vec<Complex64> = cur
            .windows(3)
            .map(|w| {
                let d1 = w[1] - w[0];
                let d2 = w[2] - w[1];
                let den = d2 - d1;
                if den.norm() <= 1e-300 || den.norm() < 1e-14 * (d1.norm() + d2.norm()) {
                    w[2]
                } else {
                    w[2] - d2 * d2 / den
                }
            })
            .collect();
        cur = next;
    }
    cur.last().copied()
}

/// Settings for [`sum_series`].
#[derive(Debug, Clone)]
pub struct SeriesPlan {
    /// First checkpoint (number of terms).
    pub first: usize,
    /// Error model for Richardson extrapolation.
    pub model: ErrorModel,
    /// Minimum number of checkpoints before convergence may be declared.
    pub min_checkpoints: usize,
}

impl SeriesPlan {
    pub fn new(first: usize, model: ErrorModel) -> Self {
        SeriesPlan {
            first: first.max(1),
            model,
            min_checkpoints: 4,
        }
    }
}

/// Checkpoint history of an accelerated summation.
#[derive(Debug, Clone, Default)]
pub struct SeriesTrace {
    pub checkpoints: Vec<(f64, Complex64)>,
    pub estimates: Vec<Complex64>,
}

/// Sums `sum_{n>=0} term(n)` with the acceleration selected in the budget.
///
/// Partial sums are taken at `first * 2^i` terms. After each checkpoint a new
/// limit estimate is formed; the summation stops when two successive estimates
/// differ by at most `tol / 4`, and the reported bound is that difference.
pub fn sum_series<F>(
    term: F,
    plan: &SeriesPlan,
    budget: &TruncationBudget,
) -> Result<(EvalResult, SeriesTrace)>
where
    F: Fn(usize) -> Result<Complex64> + Sync,
{
    let mut acc = CompensatedSum::new();
    let mut trace = SeriesTrace::default();
    let mut next = 0usize;
    let mut checkpoint = plan.first.min(budget.outer_max);
    let method = match budget.accel {
        Accel::None => Method::DirectSeries,
        _ => Method::Accelerated,
    };
    let mut best = EvalResult::new(Complex64::new(0.0, 0.0), f64::MAX, 0, method);
    loop {
        let block: Vec<Complex64> = if budget.parallel {
            (next..checkpoint)
                .into_par_iter()
                .map(&term)
                .collect::<Result<_>>()?
        } else {
            (next..checkpoint).map(&term).collect::<Result<_>>()?
        };
        for t in block {
            acc.add(t);
        }
        next = checkpoint;
        let s = acc.finish()?;
        trace.checkpoints.push((checkpoint as f64, s));
        let estimate = match budget.accel {
            Accel::None => Some(s),
            Accel::Richardson => {
                let k = (trace.checkpoints.len() - 1).min(plan.model.len());
                richardson_extrapolate(&trace.checkpoints, &plan.model, k)
            }
            Accel::Aitken => {
                let seq: Vec<Complex64> = trace.checkpoints.iter().map(|p| p.1).collect();
                aitken(&seq)
            }
        }
        .unwrap_or(s);
        trace.estimates.push(estimate);
        let m = trace.estimates.len();
        if m >= 2 {
            let diff = (trace.estimates[m - 1] - trace.estimates[m - 2]).norm();
            best = EvalResult::new(estimate, diff, checkpoint as u64, method);
            if m >= plan.min_checkpoints.max(2) && diff <= budget.tol / 4.0 {
                return Ok((best, trace));
            }
        }
        if checkpoint >= budget.outer_max {
            break;
        }
        checkpoint = (checkpoint * 2).min(budget.outer_max);
    }
    log::debug!("series failed to stabilize: {:?}", trace.estimates.last());
    Err(MzError::budget(
        format!(
            "outer series did not stabilize within {} terms",
            budget.outer_max
        ),
        best,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn model_merges_families_with_logs() {
        let m = ErrorModel::from_families(
            &[(Complex64::new(1.0, 0.0), 0), (Complex64::new(3.0, 0.0), 0)],
            5,
        );
        let e: Vec<(f64, u32)> = m
            .terms()
            .iter()
            .map(|t| (t.exponent.re, t.log_power))
            .collect();
        assert_eq!(e, vec![(1.0, 0), (2.0, 0), (3.0, 1), (3.0, 0), (4.0, 1)]);
        let m = ErrorModel::from_families(
            &[(Complex64::new(1.0, 0.0), 0), (Complex64::new(1.5, 0.0), 0)],
            4,
        );
        let e: Vec<f64> = m.terms().iter().map(|t| t.exponent.re).collect();
        assert_eq!(e, vec![1.0, 1.5, 2.0, 2.5]);
    }

    #[test]
    fn richardson_on_basel_partial_sums() {
        // sum 1/(n+1)^2 has tail ~ 1/N - 1/(2N^2) + ...
        let plan = SeriesPlan::new(8, ErrorModel::integer_powers(6));
        let budget = TruncationBudget::default().with_tol(1e-12).sequential();
        let (r, _) = sum_series(
            |n| Ok(Complex64::new(1.0 / ((n + 1) as f64).powi(2), 0.0)),
            &plan,
            &budget,
        )
        .unwrap();
        assert!((r.value.re - PI * PI / 6.0).abs() < 1e-11, "{r:?}");
        assert!(r.terms_used < 2000);
    }

    #[test]
    fn generalized_richardson_with_fractional_family() {
        // sum (n+1)^{-3/2}: tail has N^{-1/2}, N^{-3/2}, ... ; zeta(3/2) = 2.612375348685488
        let model = ErrorModel::from_families(
            &[(Complex64::new(0.5, 0.0), 0), (Complex64::new(1.0, 0.0), 0)],
            7,
        );
        let plan = SeriesPlan::new(16, model);
        let budget = TruncationBudget::default().with_tol(1e-9).sequential();
        let (r, _) = sum_series(
            |n| Ok(Complex64::new(((n + 1) as f64).powf(-1.5), 0.0)),
            &plan,
            &budget,
        )
        .unwrap();
        assert!((r.value.re - 2.612375348685488).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn aitken_on_geometric_checkpoints() {
        let seq: Vec<Complex64> = (0..8)
            .map(|i| Complex64::new(1.0 - 0.5f64.powi(i), 0.0))
            .collect();
        assert!((aitken(&seq).unwrap().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn no_acceleration_budget_error_carries_best() {
        let plan = SeriesPlan::new(8, ErrorModel::integer_powers(4));
        let budget = TruncationBudget::default()
            .with_accel(Accel::None)
            .with_tol(1e-12)
            .with_outer_max(256)
            .sequential();
        let err = sum_series(
            |n| Ok(Complex64::new(1.0 / ((n + 1) as f64).powi(2), 0.0)),
            &plan,
            &budget,
        )
        .unwrap_err();
        let best = err.best_estimate().unwrap();
        assert!((best.value.re - PI * PI / 6.0).abs() < 1e-2);
    }
}
