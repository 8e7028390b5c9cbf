//! Pass/fail thresholds for every gate the harness reports.
//!
//! Monte Carlo gates are sized at roughly three times the sampling plus
//! discretization noise expected at the default experiment sizes. Reports
//! always carry the raw distances next to the threshold.

/// Median grid-KS between the path-wise log-average CDF of `π_N(t)` and the
/// limit CDF, at the final `N`.
pub const ASCL_KS: f64 = 0.15;

/// Largest `|median per-replication estimate − pooled estimate|` over the
/// `(t, x)` grid.
pub const EQUIVALENCE_GAP: f64 = 0.1;

/// KS of `s_N(t)` against the limit law when the norming is explicit
/// (`α = 2`, `a_n = σ√n`).
pub const WEAK_LIMIT_KS: f64 = 0.05;

/// KS of median/MAD-standardized samples when the norming constant is not
/// pinned down (`α < 2`).
pub const WEAK_LIMIT_KS_SCALE_FREE: f64 = 0.08;

/// One-sample KS of path-integrated draws against `√2 N(0, 1)` at `α = 2`.
pub const ORACLE_KS_GAUSSIAN: f64 = 0.02;

/// Two-sample KS between path-integrated and closed-form draws, `α < 2`.
pub const ORACLE_KS_TWO_SAMPLE: f64 = 0.03;

/// Smallest admissible `(d_l/d_k)/(l/k)^γ`.
pub const GROWTH_MARGIN: f64 = 0.99;

/// Allowed growth of the moment ratio over its smallest-`n` value.
pub const MOMENT_SLACK: f64 = 1.5;
