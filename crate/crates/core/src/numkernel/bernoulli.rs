//! Exact Bernoulli numbers under the `z/(e^z - 1)` convention (B_1 = -1/2).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{MzError, Result};

/// Default capacity of the shared table.
pub const BERNOULLI_CAPACITY: usize = 64;

/// Exact table B_0..=B_Q.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
    as_f64: Vec<f64>,
}

impl BernoulliTable {
    /// Builds B_0..=B_q_max from `sum_{j=0}^{q} C(q+1, j) B_j = 0`.
    pub fn new(q_max: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(q_max + 1);
        values.push(BigRational::one());
        for q in 1..=q_max {
            if q > 1 && q % 2 == 1 {
                values.push(BigRational::zero());
                continue;
            }
            // B_q = -1/(q+1) * sum_{j<q} C(q+1, j) B_j
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(q+1, 0)
            for (j, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * BigRational::from_integer(binom.clone());
                }
                binom = binom * BigInt::from(q + 1 - j) / BigInt::from(j + 1);
            }
            values.push(-acc / BigRational::from_integer(BigInt::from(q + 1)));
        }
        let as_f64 = values
            .iter()
            .map(|r| {
                r.to_f64()
                    .expect("Bernoulli numbers up to the capacity fit in f64")
            })
            .collect();
        BernoulliTable { values, as_f64 }
    }

    pub fn capacity(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, q: usize) -> Result<&BigRational> {
        self.values.get(q).ok_or(MzError::Capacity {
            requested: q,
            capacity: self.capacity(),
        })
    }

    pub fn get_f64(&self, q: usize) -> Result<f64> {
        self.as_f64.get(q).copied().ok_or(MzError::Capacity {
            requested: q,
            capacity: self.capacity(),
        })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

pub(crate) fn table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(BERNOULLI_CAPACITY))
}

/// B_q as an exact rational, from the shared table.
pub fn bernoulli(q: usize) -> Result<BigRational> {
    table().get(q).cloned()
}

/// `B_q / q!` in double precision, for q up to the table capacity.
pub(crate) fn scaled_f64(q: usize) -> f64 {
    static SCALED: OnceLock<Vec<f64>> = OnceLock::new();
    SCALED.get_or_init(|| {
        let mut fact = BigInt::one();
        table()
            .values()
            .iter()
            .enumerate()
            .map(|(q, b)| {
                if q > 0 {
                    fact *= BigInt::from(q);
                }
                (b / BigRational::from_integer(fact.clone()))
                    .to_f64()
                    .unwrap()
            })
            .collect()
    })[q]
}
