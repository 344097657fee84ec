//! Benchmark fixtures shared by the criterion targets.

use mzeta_core::{cx, ComplexValue, TruncationBudget};

/// Budget used by every benchmark.
pub fn bench_budget(tol: f64) -> TruncationBudget {
    TruncationBudget::default().with_tol(tol)
}

/// Arguments in and around the critical strip.
pub fn zeta_points() -> Vec<ComplexValue> {
    vec![
        cx(2.5, 0.0),
        cx(0.5, 14.134725),
        cx(-3.5, 2.0),
        cx(3.0, 40.0),
    ]
}

/// Depth-2 points spanning direct and continued regions.
pub fn depth2_points() -> Vec<(ComplexValue, ComplexValue)> {
    vec![
        (cx(2.0, 0.0), cx(3.0, 0.0)),
        (cx(1.5, 2.0), cx(2.5, -1.0)),
        (cx(-1.0, 0.0), cx(4.0, 0.0)),
        (cx(-2.5, 1.0), cx(1.5, 0.5)),
    ]
}
