//! Almost-sure functional limit theorems for partial sums attracted to
//! α-stable laws, `α ∈ (1, 2]`.
//!
//! For positive i.i.d. inputs with mean `μ` and norming `a_n`, the crate
//! simulates
//!
//! ```text
//! s_n(t) = (1/a_n) Σ_{k ≤ ⌊nt⌋} (S_k/k − μ)
//! π_n(t) = (Π_{k ≤ ⌊nt⌋} S_k/(μk))^(μ/a_n)
//! ```
//!
//! along single trajectories, forms logarithmic averages
//! `(1/log N) Σ_{n ≤ N} (1/n) I(π_n(t) ≤ x)`, and compares them with the law
//! of `exp(∫_0^t L_α(s)/s ds)` for a stable Lévy process `L_α`.
//!
//! Modules, bottom-up:
//!
//! * [`stable`]: characteristic functions, stable sampling, input laws,
//!   norming sequences.
//! * [`levy_oracle`]: Lévy paths, the singular integral, limit-law oracles,
//!   empirical CDFs and KS distances.
//! * [`processes`]: prefix-sum trajectories and the `s_n`/`π_n` functionals.
//! * [`log_average`]: mergeable streaming log-average accumulators.
//! * [`harness`]: seeded experiments with JSON/CSV reports.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod error;
pub mod harness;
pub mod levy_oracle;
pub mod log_average;
pub mod processes;
pub mod rng;
pub mod stable;
pub mod summation;

pub use error::{Error, Result};
pub use levy_oracle::{
    ks_distance, ks_two_sample, levy_log_integral, oracle_limit_sampler, simulate_levy_path, Cdf,
    EmpiricalCdf, LevyPath, LimitOracle,
};
pub use log_average::{cesaro_probability, LogAvgAccumulator};
pub use processes::{build_trajectory, harmonic_weight, Trajectory};
pub use rng::{stream_rng, SimRng};
pub use stable::{
    norming_value, sample_input, sample_stable, stable_cf, InputLaw, NormingSequence, Stable,
    StableParams,
};
