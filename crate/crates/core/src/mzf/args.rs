use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{MzError, Result};
use crate::numkernel::is_finite;

/// Argument `(s_1, ..., s_r)` of a multiple zeta function, depth `r >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct ArgVector(Vec<Complex64>);

impl ArgVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(MzError::Precondition(
                "argument vector must have depth >= 1".into(),
            ));
        }
        if let Some(z) = entries.iter().find(|z| !is_finite(**z)) {
            return Err(MzError::Precondition(format!("non-finite argument {z}")));
        }
        Ok(ArgVector(entries))
    }

    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    /// `s(l, r) = s_l + ... + s_r`, 1-indexed and inclusive.
    pub fn partial_sum(&self, l: usize, r: usize) -> Complex64 {
        assert!(
            1 <= l && l <= r && r <= self.depth(),
            "bad partial-sum range {l}..={r}"
        );
        self.0[l - 1..r].iter().sum()
    }

    pub fn conj(&self) -> Self {
        ArgVector(self.0.iter().map(|z| z.conj()).collect())
    }

    /// `self ++ [s]`
    pub fn pushed(&self, s: Complex64) -> Self {
        let mut v = self.0.clone();
        v.push(s);
        ArgVector(v)
    }
}

impl TryFrom<Vec<Complex64>> for ArgVector {
    type Error = MzError;
    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        ArgVector::new(v)
    }
}

impl From<ArgVector> for Vec<Complex64> {
    fn from(a: ArgVector) -> Self {
        a.0
    }
}

impl fmt::Display for ArgVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, ")")
    }
}

/// True iff `Re(s_l + ... + s_r) > r - l + 1` for every `l`.
pub fn in_matsumoto_domain(args: &ArgVector) -> bool {
    let r = args.depth();
    (1..=r).all(|l| args.partial_sum(l, r).re > (r - l + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_examples() {
        assert!(in_matsumoto_domain(
            &ArgVector::from_reals(&[1.5, 2.5]).unwrap()
        ));
        assert!(in_matsumoto_domain(
            &ArgVector::from_reals(&[-1.0, 4.0]).unwrap()
        ));
        assert!(!in_matsumoto_domain(
            &ArgVector::from_reals(&[-1.0, 3.0]).unwrap()
        ));
        assert!(in_matsumoto_domain(
            &ArgVector::from_reals(&[1.0, 1.0, 2.5]).unwrap()
        ));
        assert!(in_matsumoto_domain(
            &ArgVector::from_reals(&[1.0, 1.0, 2.0]).unwrap()
        ));
        assert!(!in_matsumoto_domain(
            &ArgVector::from_reals(&[0.0, 1.0, 2.0]).unwrap()
        ));
    }

    #[test]
    fn rejects_empty_and_nonfinite() {
        assert!(ArgVector::new(vec![]).is_err());
        assert!(ArgVector::new(vec![Complex64::new(f64::INFINITY, 0.0)]).is_err());
    }

    #[test]
    fn partial_sums() {
        let a = ArgVector::new(vec![
            Complex64::new(1.0, 1.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, -2.0),
        ])
        .unwrap();
        assert_eq!(a.partial_sum(1, 3), Complex64::new(6.0, -1.0));
        assert_eq!(a.partial_sum(2, 3), Complex64::new(5.0, -2.0));
        assert_eq!(a.partial_sum(3, 3), Complex64::new(3.0, -2.0));
    }
}
