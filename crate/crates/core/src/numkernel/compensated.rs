use num_complex::Complex64;

use crate::error::{MzError, Result};

/// Neumaier-compensated accumulator for complex terms.
///
/// Real and imaginary parts are compensated independently.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
    count: u64,
}

#[inline]
fn two_sum_step(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        two_sum_step(&mut self.re, &mut self.re_c, z.re);
        two_sum_step(&mut self.im, &mut self.im_c, z.im);
        self.count += 1;
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Final value, or an error if the running sum left the finite range.
    pub fn finish(&self) -> Result<Complex64> {
        let v = self.value();
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(MzError::Overflow("accumulating a compensated sum"))
        }
    }
}

impl Extend<Complex64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = Complex64>>(&mut self, iter: I) {
        for z in iter {
            self.add(z);
        }
    }
}

/// Compensated sum of a finite stream of finite terms.
pub fn compensated_sum<I>(terms: I) -> Result<Complex64>
where
    I: IntoIterator<Item = Complex64>,
{
    let mut acc = CompensatedSum::new();
    for z in terms {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(MzError::NonFinite("compensated_sum input"));
        }
        acc.add(z);
    }
    acc.finish()
}
