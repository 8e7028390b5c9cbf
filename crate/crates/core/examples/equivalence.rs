//! Path-wise log averages on independent replications next to their pooled
//! average, which estimates the log average of the probabilities.

use ascl_lab::harness::experiments::run_equivalence_experiment;
use ascl_lab::harness::{ExperimentConfig, Scenario};

fn main() -> ascl_lab::Result<()> {
    let mut cfg = ExperimentConfig::for_scenario(Scenario::Equivalence);
    cfg.n = 20_000;
    cfg.replications = 20;
    cfg.x_points = 41;
    cfg.oracle_samples = 4_000;
    cfg.oracle_steps = 2_000;

    let (r, _) = run_equivalence_experiment(&cfg)?;
    let s = &r.summary;
    println!("R = {}, N = {}: max |median - pooled| = {:.4}, max IQR = {:.4}", s.replications, s.n, s.max_gap, s.max_iqr);
    for (t, ks) in cfg.t_grid.iter().zip(&r.pooled_ks) {
        println!("  t = {t}: pooled estimate vs limit CDF, grid KS {ks:.4}");
    }
    let worst = s
        .cells
        .iter()
        .max_by(|a, b| (a.median - a.pooled).abs().total_cmp(&(b.median - b.pooled).abs()))
        .unwrap();
    println!(
        "widest gap at t = {}, x = {:.3}: median {:.4}, pooled {:.4}, IQR {:.4}",
        worst.t, worst.x, worst.median, worst.pooled, worst.iqr
    );
    Ok(())
}
