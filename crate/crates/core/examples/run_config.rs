//! Runs any scenario from a TOML file and writes its report:
//!
//! ```text
//! cargo run --release --example run_config -- configs/smoke.toml out/smoke
//! ```

use std::path::PathBuf;

use ascl_lab::harness::{run_scenario, ExperimentConfig, Scenario};

fn main() -> ascl_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/smoke.toml")));
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("out/example"));

    let cfg = ExperimentConfig::load(&config, Scenario::AsclProduct)?;
    println!("{} from {} (config hash {})", cfg.scenario, config.display(), &cfg.hash()[..12]);
    let report = run_scenario(&cfg)?;
    report.write(&out)?;
    print!("{}", report.summary());
    println!("report in {}", out.display());
    Ok(())
}
