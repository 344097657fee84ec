//! Euler-Zagier multiple zeta functions at complex arguments, and numerical
//! verification of sum formulas for them.
//!
//! * [`numkernel`]: Bernoulli numbers, Riemann zeta, power tails, compensated sums.
//! * [`mzf`]: nested-series evaluation and the depth-2 Euler-Maclaurin continuation.
//! * [`sumformula`]: the sum-formula identities as executable checks.
//! * [`accel`]: Richardson / Aitken acceleration of partial-sum sequences.

pub mod accel;
pub mod budget;
pub mod error;
pub mod mzf;
pub mod numkernel;
pub mod result;
pub mod sumformula;

pub use budget::{Accel, TruncationBudget};
pub use error::{MzError, Result};
pub use numkernel::{cx, ComplexValue};
pub use result::{EvalResult, Method};
