//! Path-wise log-average CDF of `π_n(1)` on a few seeds, at increasing N,
//! against the law of `exp(√2 Z)`.

use ascl_lab::harness::experiments::run_ascl_experiment;
use ascl_lab::harness::{ExperimentConfig, Scenario};

fn main() -> ascl_lab::Result<()> {
    let mut cfg = ExperimentConfig::for_scenario(Scenario::AsclProduct);
    cfg.n = 200_000;
    cfg.replications = 8;
    cfg.checkpoints = vec![1_000, 20_000];
    cfg.t_grid = vec![0.5, 1.0];
    cfg.oracle_samples = 4_000;
    cfg.oracle_steps = 2_000;

    let r = run_ascl_experiment(&cfg)?;
    for c in &r.distances {
        for d in &c.per_t {
            println!("N = {:>7}, t = {}: median KS {:.4} over {} seeds", c.n, d.t, d.median, d.per_seed.len());
        }
    }
    for g in &r.gates {
        println!("{} {}: {:.4}", if g.pass { "PASS" } else { "FAIL" }, g.name, g.value);
    }
    Ok(())
}
