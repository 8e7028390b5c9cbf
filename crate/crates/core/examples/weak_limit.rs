//! Distribution of `s_N(t)` across independent trajectories against the
//! limit law, for light- and heavy-tailed inputs.

use ascl_lab::harness::{run_weak_limit_check, ExperimentConfig, Scenario};
use ascl_lab::InputLaw;

fn main() -> ascl_lab::Result<()> {
    for law in [InputLaw::shifted_exponential(1.0, 0.0)?, InputLaw::pareto(1.5, 1.0)?] {
        let mut cfg = ExperimentConfig::for_scenario(Scenario::WeakLimit);
        cfg.input_law = law;
        cfg.n = 2_000;
        cfg.replications = 2_000;
        cfg.oracle_samples = 2_000;
        cfg.oracle_steps = 1_000;
        let r = run_weak_limit_check(&cfg)?;
        println!("{law:?}");
        for row in &r.rows {
            let how = if row.scale_free { "scale-free" } else { "absolute" };
            println!("  t = {:<5} KS ({how}) = {:.4}", row.t, row.ks);
        }
    }
    Ok(())
}
