//! Complex numbers with an extended exponent range.
//!
//! Nested sums with large-magnitude arguments produce intermediate products
//! such as `n^4000` that leave the f64 range even though the final value is
//! moderate. `ExtComplex` stores `z * exp(scale)`.

use std::ops::{Add, AddAssign, Mul};

use num_complex::Complex64;

use crate::error::{MzError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtComplex {
    z: Complex64,
    scale: f64,
}

const RENORM_HI: f64 = 1e150;
const RENORM_LO: f64 = 1e-150;

impl ExtComplex {
    pub const ZERO: ExtComplex = ExtComplex {
        z: Complex64::new(0.0, 0.0),
        scale: 0.0,
    };

    pub fn from_complex(z: Complex64) -> Self {
        ExtComplex { z, scale: 0.0 }.normalized()
    }

    /// `exp(w)` without overflow in the real part.
    pub fn exp(w: Complex64) -> Self {
        ExtComplex {
            z: Complex64::from_polar(1.0, w.im),
            scale: w.re,
        }
    }

    /// `n^{-s}` for a positive integer `n`.
    pub fn pow_neg(n: f64, s: Complex64) -> Self {
        Self::exp(-s * n.ln())
    }

    pub fn is_zero(&self) -> bool {
        self.z.re == 0.0 && self.z.im == 0.0
    }

    /// Natural log of the modulus; `-inf` for zero.
    pub fn ln_norm(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.z.norm().ln() + self.scale
        }
    }

    pub fn norm(&self) -> f64 {
        self.ln_norm().exp()
    }

    fn normalized(self) -> Self {
        let n = self.z.norm();
        if n == 0.0 {
            return ExtComplex::ZERO;
        }
        if !(RENORM_LO..=RENORM_HI).contains(&n) {
            ExtComplex {
                z: self.z / n,
                scale: self.scale + n.ln(),
            }
        } else {
            self
        }
    }

    /// Converts back to an ordinary complex number.
    pub fn to_complex(&self) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if self.scale > 700.0 {
            let n = self.ln_norm();
            if n > 709.0 {
                return Err(MzError::Overflow("converting an extended-range value"));
            }
            return Ok(self.z / self.z.norm() * n.exp());
        }
        Ok(self.z * self.scale.exp())
    }
}

impl Mul for ExtComplex {
    type Output = ExtComplex;
    fn mul(self, rhs: ExtComplex) -> ExtComplex {
        ExtComplex {
            z: self.z * rhs.z,
            scale: self.scale + rhs.scale,
        }
        .normalized()
    }
}

impl Mul<Complex64> for ExtComplex {
    type Output = ExtComplex;
    fn mul(self, rhs: Complex64) -> ExtComplex {
        ExtComplex {
            z: self.z * rhs,
            scale: self.scale,
        }
        .normalized()
    }
}

impl Add for ExtComplex {
    type Output = ExtComplex;
    fn add(self, rhs: ExtComplex) -> ExtComplex {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.scale >= rhs.scale {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let d = lo.scale - hi.scale;
        if d < -800.0 {
            return hi;
        }
        ExtComplex {
            z: hi.z + lo.z * d.exp(),
            scale: hi.scale,
        }
        .normalized()
    }
}

impl AddAssign for ExtComplex {
    fn add_assign(&mut self, rhs: ExtComplex) {
        *self = *self + rhs;
    }
}
