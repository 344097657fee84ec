//! The sum-formula identities as executable checks producing [`VerificationReport`]s.

mod classical;
mod gab;
mod oracles;
mod report;
mod theorem1;
mod window;

pub use classical::{classical_sum_formula, composition_count, composition_sum, compositions};
pub use gab::{g_ab_closed, g_ab_recursive, theorem2_check, GabSpec, DEFAULT_DEPTH_CAP};
pub use oracles::{harmonic_form_identity, harmonic_form_sums, telescoped_double_sum};
pub use report::VerificationReport;
pub use theorem1::{theorem1_check, theorem1_lhs, theorem1_term};
pub use window::{f_d, lemma31_check, lemma31_lhs, window_sum, window_sum_enumerated};
