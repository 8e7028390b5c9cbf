use std::path::Path;
use std::process::{Command, Output};

use ascl_lab::harness::experiments::{equivalence_summary, run_ascl_experiment};
use ascl_lab::harness::{run_scenario, ExperimentConfig, Scenario};
use ascl_lab::log_average::truncated_ln;
use ascl_lab::{stream_rng, InputLaw, LogAvgAccumulator, NormingSequence, Trajectory};

fn cli(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ascl-lab"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn assert_well_formed_csv(path: &Path) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let cols = lines.next().expect("header").split(',').count();
    let mut rows = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), cols, "{}: {line}", path.display());
        for f in fields {
            f.parse::<f64>().unwrap_or_else(|_| panic!("{}: bad field {f}", path.display()));
        }
        rows += 1;
    }
    assert!(rows > 0, "{} has no rows", path.display());
}

#[test]
fn smoke_run_writes_report_and_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "oracle.toml",
        "scenario = \"oracle\"\noracle_samples = 10\noracle_steps = 50\nalphas = [1.5, 2.0]\n",
    );
    let out = cli(&["oracle", "--config", &cfg, "--seed", "7", "--out", "res", "--threads", "1"], tmp.path());
    assert!(matches!(out.status.code(), Some(0 | 1)), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 2);

    let res = tmp.path().join("res");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(res.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["scenario"], "oracle");
    assert_eq!(report["provenance"]["base_seed"], 7);
    assert_eq!(report["provenance"]["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(report["config"]["seed"], 7);
    let all_pass = report["all_pass"].as_bool().unwrap();
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));
    for name in ["oracle_alpha1.5_path.csv", "oracle_alpha2_closed.csv"] {
        assert_well_formed_csv(&res.join(name));
    }
}

#[test]
fn every_subcommand_runs_at_small_scale() {
    let tmp = tempfile::tempdir().unwrap();
    let bodies = [
        ("ascl", "n = 3000\nreplications = 3\ncheckpoints = [100]\nx_points = 11\noracle_samples = 200\noracle_steps = 100\n"),
        ("equiv", "n = 2000\nreplications = 4\nx_points = 11\noracle_samples = 200\noracle_steps = 100\n"),
        ("weak-limit", "n = 500\nreplications = 200\n"),
        ("conditions", "n = 2000\nreplications = 50\nmoment_grid_points = 4\n"),
        ("oracle", "oracle_samples = 200\noracle_steps = 100\n"),
    ];
    for (cmd, body) in bodies {
        let cfg = write(tmp.path(), &format!("{cmd}.toml"), body);
        let out = cli(&[cmd, "--config", &cfg, "--out", cmd], tmp.path());
        assert!(matches!(out.status.code(), Some(0 | 1)), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        let dir = tmp.path().join(cmd);
        assert!(dir.join("report.json").exists());
        let csvs: Vec<_> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "csv"))
            .collect();
        assert!(!csvs.is_empty(), "{cmd} wrote no csv");
        for p in csvs {
            assert_well_formed_csv(&p);
        }
    }
}

#[test]
fn bad_configs_are_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let typo = write(tmp.path(), "typo.toml", "scenario = \"oracle\"\noracle_sample = 10\n");
    let out = cli(&["oracle", "--config", &typo], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("oracle_sample"));

    let wrong = write(tmp.path(), "wrong.toml", "scenario = \"equiv\"\n");
    assert_eq!(cli(&["oracle", "--config", &wrong], tmp.path()).status.code(), Some(2));

    let nested = write(
        tmp.path(),
        "nested.toml",
        "[input_law]\nkind = \"pareto\"\nalpha = 1.5\nx_min = 1.0\nextra = 3\n",
    );
    assert_eq!(cli(&["weak-limit", "--config", &nested], tmp.path()).status.code(), Some(2));

    let heavy_var = write(tmp.path(), "pareto.toml", "[input_law]\nkind = \"pareto\"\nalpha = 2.5\nx_min = 1.0\n");
    assert_eq!(cli(&["weak-limit", "--config", &heavy_var], tmp.path()).status.code(), Some(2));
}

#[test]
fn config_hash_ignores_output_and_tracks_content() {
    let a = ExperimentConfig::from_toml_str("scenario = \"equiv\"\noutput = \"x\"\n", Scenario::AsclProduct).unwrap();
    let b = ExperimentConfig::from_toml_str("scenario = \"equiv\"\noutput = \"y\"\n", Scenario::AsclProduct).unwrap();
    assert_eq!(a.hash(), b.hash());
    let c = ExperimentConfig::from_toml_str("scenario = \"equiv\"\nseed = 1\n", Scenario::AsclProduct).unwrap();
    assert_ne!(a.hash(), c.hash());
    let mut defaults = ExperimentConfig::for_scenario(Scenario::Equivalence);
    defaults.output = Some("x".into());
    assert_eq!(a, defaults);
}

#[test]
fn degenerate_input_gives_a_step_at_one() {
    let mut cfg = ExperimentConfig::for_scenario(Scenario::AsclProduct);
    cfg.input_law = InputLaw::degenerate(2.0).unwrap();
    cfg.alpha = Some(2.0);
    cfg.norming = Some(NormingSequence::sqrt_n(1.0).unwrap());
    cfg.n = 500;
    cfg.replications = 2;
    cfg.checkpoints = vec![];
    cfg.x_points = 41;
    cfg.oracle_samples = 500;
    cfg.oracle_steps = 100;
    let r = run_ascl_experiment(&cfg).unwrap();
    let top = (1..=cfg.n).map(|k| 1.0 / k as f64).sum::<f64>() / truncated_ln(cfg.n as f64);
    for acc in &r.accumulators {
        for ti in 0..cfg.t_grid.len() {
            for (&x, q) in acc.x_grid().iter().zip(acc.query_row(ti).unwrap()) {
                let expect = if x >= 1.0 { top } else { 0.0 };
                assert!((q - expect).abs() < 1e-12, "x={x}: {q}");
            }
        }
    }
}

fn replication(seed: u64, x: &[f64], t: &[f64]) -> LogAvgAccumulator {
    let law = InputLaw::shifted_exponential(1.0, 0.0).unwrap();
    let traj = Trajectory::new(law.sample(300, &mut stream_rng(seed, 0)).unwrap(), 1.0).unwrap();
    let mut acc = LogAvgAccumulator::new(x.to_vec(), t.to_vec()).unwrap();
    for n in 1..=300 {
        let d = (n as f64).sqrt();
        let v: Vec<f64> = t.iter().map(|&tt| traj.s_value(d, n, tt).unwrap()).collect();
        acc.accumulate(n, &v).unwrap();
    }
    acc
}

#[test]
fn equivalence_degenerate_cases() {
    let (x, t) = (vec![-1.0, 0.0, 1.0], vec![0.5, 1.0]);
    let one = replication(1, &x, &t);
    let s = equivalence_summary(std::slice::from_ref(&one)).unwrap();
    assert_eq!(s.max_gap, 0.0);
    assert_eq!(s.max_iqr, 0.0);
    for c in &s.cells {
        assert_eq!(c.median, c.pooled);
    }
    let same = vec![one.clone(), one.clone(), one.clone()];
    let s = equivalence_summary(&same).unwrap();
    assert!(s.max_gap < 1e-15);
    for (c, q) in s.cells.iter().zip(one.query_row(0).unwrap().into_iter().chain(one.query_row(1).unwrap())) {
        assert!((c.pooled - q).abs() < 1e-15);
    }

    let two = [one, replication(2, &x, &t)];
    for xi in 0..x.len() {
        let (q1, q2) = (two[0].query(1, xi).unwrap(), two[1].query(1, xi).unwrap());
        let p = ascl_lab::cesaro_probability(&two, 1, xi).unwrap();
        assert!((p - 0.5 * (q1 + q2)).abs() < 1e-15);
    }

    let mut cfg = ExperimentConfig::for_scenario(Scenario::Equivalence);
    cfg.replications = 1;
    cfg.n = 1_000;
    cfg.oracle_samples = 200;
    cfg.oracle_steps = 100;
    let report = run_scenario(&cfg).unwrap();
    assert_eq!(report.gates[0].value, 0.0);
}

#[test]
fn log_average_matches_direct_double_loop() {
    let (x, t) = (vec![-1.5, -0.5, 0.0, 0.3, 1.2], vec![0.25, 0.5, 1.0]);
    let acc = replication(5, &x, &t);
    let law = InputLaw::shifted_exponential(1.0, 0.0).unwrap();
    let y = law.sample(300, &mut stream_rng(5, 0)).unwrap();
    for (ti, &tt) in t.iter().enumerate() {
        let cdf = acc.to_cdf(ti).unwrap();
        for (xi, &xx) in x.iter().enumerate() {
            let mut total = 0.0;
            for n in 1..=300usize {
                let k = (n as f64 * tt + 1e-9).floor() as usize;
                let mut s = 0.0;
                let mut p = 0.0;
                for (j, &v) in y.iter().take(k).enumerate() {
                    s += v;
                    p += s / (j + 1) as f64 - 1.0;
                }
                if p / (n as f64).sqrt() <= xx {
                    total += 1.0 / n as f64;
                }
            }
            let direct = total / 300f64.ln();
            assert!((acc.query(ti, xi).unwrap() - direct).abs() < 1e-12);
            assert!((cdf.f[xi] - direct.min(1.0)).abs() < 1e-12);
        }
    }
}
