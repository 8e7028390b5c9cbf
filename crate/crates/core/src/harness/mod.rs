//! Experiment orchestration: configuration, condition checks, the five
//! scenarios, and their JSON/CSV reports.

pub mod conditions;
pub mod config;
pub mod experiments;
pub mod report;
pub mod tolerances;

pub use conditions::{check_growth_condition, check_moment_condition, log_spaced};
pub use config::{ExperimentConfig, Scenario};
pub use experiments::{
    equivalence_summary, run_ascl_experiment, run_conditions, run_equivalence_experiment,
    run_oracle_identity, run_scenario, run_weak_limit_check,
};
pub use report::{Gate, RunReport};
