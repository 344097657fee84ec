//! Scalar kernel: Bernoulli numbers, Pochhammer symbols, harmonic numbers,
//! compensated summation, Riemann zeta and power tails for complex arguments.

mod bernoulli;
mod compensated;
mod ext;
mod zeta;

pub use bernoulli::{bernoulli, BernoulliTable, BERNOULLI_CAPACITY};
pub use compensated::{compensated_sum, CompensatedSum};
pub use ext::ExtComplex;
pub use zeta::{power_tail, riemann_zeta, scaled_power_tail, TailExpansion};

pub(crate) use bernoulli::scaled_f64 as bernoulli_over_factorial;
pub(crate) use zeta::{em_threshold, TAIL_ORDER_MIN};

use num_complex::Complex64;

use crate::error::{MzError, Result};

/// Complex scalar used for every argument and result.
pub type ComplexValue = Complex64;

/// Radius around s = 1 (and other singular points) inside which evaluation is refused.
pub const POLE_RADIUS: f64 = 1e-8;

/// Largest Euler-Maclaurin order supported by the Bernoulli table.
pub const MAX_EM_TERMS: usize = 60;

#[inline]
pub fn cx(re: f64, im: f64) -> ComplexValue {
    Complex64::new(re, im)
}

#[inline]
pub fn is_finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub(crate) fn ensure_finite(z: ComplexValue, what: &'static str) -> Result<ComplexValue> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(MzError::NonFinite(what))
    }
}

pub(crate) fn pole_check(z: ComplexValue, at: f64, factor: impl FnOnce() -> String) -> Result<()> {
    if (z - at).norm() <= POLE_RADIUS {
        Err(MzError::Pole {
            factor: factor(),
            point: format!("{z}"),
        })
    } else {
        Ok(())
    }
}

/// `n^{-s}` for a positive integer `n`.
#[inline]
pub(crate) fn pow_neg(n: f64, s: ComplexValue) -> ComplexValue {
    if s.im == 0.0 {
        Complex64::new(n.powf(-s.re), 0.0)
    } else {
        (-s * n.ln()).exp()
    }
}

/// Rising factorial `(s)_n = s (s+1) ... (s+n-1)`.
pub fn pochhammer(s: ComplexValue, n: usize) -> ComplexValue {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (s + k as f64))
}

/// `H_m = 1 + 1/2 + ... + 1/m`, with `H_0 = 0`.
pub fn harmonic(m: u64) -> f64 {
    let mut acc = CompensatedSum::new();
    for n in 1..=m {
        acc.add(Complex64::new(1.0 / n as f64, 0.0));
    }
    acc.value().re
}
