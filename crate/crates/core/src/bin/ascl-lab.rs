use std::path::PathBuf;
use std::process::ExitCode;

use ascl_lab::harness::{run_scenario, ExperimentConfig, Scenario};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ascl-lab", version, about = "Seeded ASCLT experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Log-average ASCLT for the product process π_n
    Ascl(RunArgs),
    /// Cross-seed agreement of the log-average estimates
    Equiv(RunArgs),
    /// Empirical law of s_n(t) against the limit oracle
    WeakLimit(RunArgs),
    /// Growth and moment checks on the norming sequence
    Conditions(RunArgs),
    /// Path-integrated oracle against the closed form
    Oracle(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML config; omitted keys take the scenario defaults
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the config's base seed
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (default: config `output`, else `out`)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
}

fn run(scenario: Scenario, args: RunArgs) -> ascl_lab::Result<bool> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path, scenario)?,
        None => ExperimentConfig::for_scenario(scenario),
    };
    if cfg.scenario != scenario {
        return Err(ascl_lab::Error::Config(format!(
            "config is for `{}`, not `{scenario}`",
            cfg.scenario
        )));
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let out = args
        .out
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from("out"));

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = args.threads {
        pool = pool.num_threads(k.max(1));
    }
    let pool = pool
        .build()
        .map_err(|e| ascl_lab::Error::Config(format!("thread pool: {e}")))?;
    let report = pool.install(|| run_scenario(&cfg))?;
    report.write(&out)?;
    print!("{}", report.summary());
    println!("wrote {}", out.join("report.json").display());
    Ok(report.all_pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (scenario, args) = match cli.command {
        Command::Ascl(a) => (Scenario::AsclProduct, a),
        Command::Equiv(a) => (Scenario::Equivalence, a),
        Command::WeakLimit(a) => (Scenario::WeakLimit, a),
        Command::Conditions(a) => (Scenario::Conditions, a),
        Command::Oracle(a) => (Scenario::OracleIdentity, a),
    };
    match run(scenario, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
