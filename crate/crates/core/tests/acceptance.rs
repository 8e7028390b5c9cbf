//! End-to-end acceptance criteria at full scale. Prints one PASS/FAIL line
//! per criterion and exits non-zero if any fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use ascl_lab::harness::experiments::{run_ascl_experiment, run_equivalence_experiment};
use ascl_lab::harness::{
    check_growth_condition, run_conditions, run_oracle_identity, run_scenario,
    run_weak_limit_check, ExperimentConfig, Scenario,
};
use ascl_lab::{
    stream_rng, InputLaw, LimitOracle, NormingSequence, Stable, StableParams, Trajectory,
};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn median(v: &[f64]) -> f64 {
    let mut v = v.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn sample_variance(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
}

/// Backward-weighted sum equals the centered prefix `P_n` for random
/// trajectories of random length.
fn weighted_representation() -> Outcome {
    let laws = [
        InputLaw::shifted_exponential(1.0, 0.0).unwrap(),
        InputLaw::lognormal(0.0, 1.0).unwrap(),
        InputLaw::pareto(1.5, 1.0).unwrap(),
    ];
    let mut rng = stream_rng(1, 0);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let law = &laws[i % laws.len()];
        let len = rng.random_range(1..=1000);
        let traj = Trajectory::new(law.sample(len, &mut rng).unwrap(), law.mean()).unwrap();
        for n in [len, rng.random_range(1..=len)] {
            let p = traj.centered_prefix(n);
            let w = traj.weighted_representation(n).unwrap();
            worst = worst.max((w - p).abs() / p.abs().max(1.0));
        }
    }
    outcome(worst <= 1e-9, format!("max relative error {worst:.3e} <= 1e-9"))
}

fn oracle_identity() -> Outcome {
    let cfg = ExperimentConfig::for_scenario(Scenario::OracleIdentity);
    let r = run_oracle_identity(&cfg).unwrap();
    let detail = r
        .gates
        .iter()
        .map(|g| format!("{} = {:.4}", g.name, g.value))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(r.gates.iter().all(|g| g.pass), detail)
}

/// `Var ∫_0^t W(s)/s ds = 2t`.
fn gaussian_variance() -> Outcome {
    let oracle = LimitOracle::new(2.0).unwrap().with_path_steps(10_000).unwrap();
    let ts = [0.25, 0.5, 1.0];
    let draws = oracle
        .path_integrated(&ts, 100_000, &mut stream_rng(3, 0))
        .unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for (t, d) in ts.iter().zip(&draws) {
        let rel = sample_variance(d.samples()) / (2.0 * t) - 1.0;
        pass &= rel.abs() <= 0.07;
        parts.push(format!("t={t}: {:+.2}%", 100.0 * rel));
    }
    outcome(pass, format!("relative variance error {} (|.| <= 7%)", parts.join(", ")))
}

fn weak_limit() -> Outcome {
    let mut gauss = ExperimentConfig::for_scenario(Scenario::WeakLimit);
    gauss.t_grid = vec![1.0];
    let g = run_weak_limit_check(&gauss).unwrap();

    let mut heavy = gauss.clone();
    heavy.input_law = InputLaw::pareto(1.5, 1.0).unwrap();
    let h = run_weak_limit_check(&heavy).unwrap();

    let (kg, kh) = (g.rows[0].ks, h.rows[0].ks);
    outcome(
        g.gates[0].pass && h.gates[0].pass,
        format!("exponential KS {kg:.4} <= 0.05; Pareto(1.5) scale-free KS {kh:.4} <= 0.08"),
    )
}

fn ascl_product() -> Outcome {
    let mut cfg = ExperimentConfig::for_scenario(Scenario::AsclProduct);
    cfg.t_grid = vec![1.0];
    let r = run_ascl_experiment(&cfg).unwrap();
    let early = r.median_ks(1_000, 0).unwrap();
    let late = r.median_ks(cfg.n, 0).unwrap();
    outcome(
        late <= 0.15 && late < early,
        format!("median KS {late:.4} at N=1e6 (<= 0.15), {early:.4} at N=1e3 (must exceed)"),
    )
}

fn log_linearization_trend() -> Outcome {
    let law = InputLaw::shifted_exponential(1.0, 0.0).unwrap();
    let seq = law.norming().unwrap();
    let (lo, hi) = (1_000, 100_000);
    let (mut at_lo, mut at_hi) = (Vec::new(), Vec::new());
    for r in 0..20 {
        let y = law.sample(hi, &mut stream_rng(6, r)).unwrap();
        let traj = Trajectory::new(y, law.mean()).unwrap();
        at_lo.push(traj.lemma1_discrepancy(seq.value(lo), lo, 1.0).unwrap());
        at_hi.push(traj.lemma1_discrepancy(seq.value(hi), hi, 1.0).unwrap());
    }
    let (a, b) = (median(&at_lo), median(&at_hi));
    outcome(b < a, format!("median discrepancy {b:.4e} at n=1e5 < {a:.4e} at n=1e3"))
}

fn equivalence() -> Outcome {
    let cfg = ExperimentConfig::for_scenario(Scenario::Equivalence);
    let (r, _) = run_equivalence_experiment(&cfg).unwrap();
    outcome(
        r.gates[0].pass,
        format!(
            "max |median - pooled| {:.4} <= 0.1 (max IQR {:.3})",
            r.summary.max_gap, r.summary.max_iqr
        ),
    )
}

fn conditions() -> Outcome {
    let mut pass = true;
    let mut margins = Vec::new();
    for alpha in [1.2, 1.5, 1.8, 2.0] {
        let seq = NormingSequence::power_law(alpha, 1.0).unwrap();
        let g = check_growth_condition(&seq, 1.0 / alpha, 1, 100_000, 20).unwrap();
        pass &= g.pass;
        margins.push(format!("{:.4}", g.margin));
    }
    let sqrt = NormingSequence::sqrt_n(1.0).unwrap();
    let bad = check_growth_condition(&sqrt, 0.6, 1, 100_000, 20).unwrap();
    pass &= !bad.pass;

    let cfg = ExperimentConfig::for_scenario(Scenario::Conditions);
    let r = run_conditions(&cfg).unwrap();
    pass &= r.moment.pass;
    outcome(
        pass,
        format!(
            "power-law margins [{}] >= 0.99; sqrt(n) at gamma=0.6 margin {:.4} fails; moment ratio {:.3} <= {:.3}",
            margins.join(", "),
            bad.margin,
            r.moment.max_ratio,
            r.moment.slack * r.moment.fitted_constant
        ),
    )
}

fn small_configs() -> Vec<ExperimentConfig> {
    Scenario::ALL
        .iter()
        .map(|&s| {
            let mut c = ExperimentConfig::for_scenario(s);
            c.n = 2_000;
            c.replications = 8;
            c.oracle_samples = 300;
            c.oracle_steps = 200;
            c.x_points = 21;
            c.checkpoints = vec![100];
            c.moment_grid_points = 5;
            if s != Scenario::AsclProduct {
                c.checkpoints.clear();
            }
            c
        })
        .collect()
}

fn read_dir(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

/// Same seed, same bytes: twice through the library, and through the binary
/// at one and two worker threads.
fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let mut checked = 0;
    for cfg in small_configs() {
        let name = cfg.scenario.name();
        let (a, b) = (tmp.path().join(format!("{name}-a")), tmp.path().join(format!("{name}-b")));
        run_scenario(&cfg).unwrap().write(&a).unwrap();
        run_scenario(&cfg).unwrap().write(&b).unwrap();
        let (fa, fb) = (read_dir(&a), read_dir(&b));
        if fa != fb || fa.len() < 2 {
            return outcome(false, format!("{name}: library outputs differ"));
        }

        let toml_path = tmp.path().join(format!("{name}.toml"));
        std::fs::write(&toml_path, toml::to_string(&cfg).unwrap()).unwrap();
        let mut outs = Vec::new();
        for threads in ["1", "2"] {
            let out = tmp.path().join(format!("{name}-cli{threads}"));
            let status = Command::new(env!("CARGO_BIN_EXE_ascl-lab"))
                .arg(name)
                .arg("--config")
                .arg(&toml_path)
                .args(["--seed", &cfg.seed.to_string(), "--threads", threads])
                .arg("--out")
                .arg(&out)
                .output()
                .unwrap();
            if !matches!(status.status.code(), Some(0 | 1)) {
                return outcome(
                    false,
                    format!("{name}: cli error {}", String::from_utf8_lossy(&status.stderr)),
                );
            }
            outs.push(read_dir(&out));
        }
        if outs[0] != outs[1] || outs[0] != fa {
            return outcome(false, format!("{name}: cli outputs differ"));
        }
        checked += fa.len();
    }
    outcome(true, format!("{checked} files byte-identical across reruns, cli and thread counts"))
}

/// Empirical characteristic function of totally skewed stable draws.
fn sampler_calibration() -> Outcome {
    let m = 100_000;
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for (i, alpha) in [1.2, 1.5, 1.8, 2.0].into_iter().enumerate() {
        let params = StableParams::new(alpha, 1.0).unwrap();
        let sampler = Stable::new(params).unwrap();
        let mut rng = stream_rng(10, i as u64);
        let xs: Vec<f64> = (0..m).map(|_| rng.sample(&sampler)).collect();
        let mut sup = 0.0f64;
        for k in 1..=30 {
            let t = 0.1 * k as f64;
            let (c, s) = xs.iter().fold((0.0, 0.0), |(c, s), &x| {
                let (sn, cs) = (t * x).sin_cos();
                (c + cs, s + sn)
            });
            let err = (num_complex::Complex64::new(c / m as f64, s / m as f64) - params.cf(t)).norm();
            sup = sup.max(err);
        }
        worst = worst.max(sup);
        parts.push(format!("alpha={alpha}: {sup:.4}"));
    }
    outcome(worst <= 0.02, format!("sup CF error {} (<= 0.02)", parts.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("weighted representation", weighted_representation),
        ("oracle identity", oracle_identity),
        ("gaussian variance law", gaussian_variance),
        ("weak limit", weak_limit),
        ("almost-sure limit of products", ascl_product),
        ("log-linearization trend", log_linearization_trend),
        ("path-wise vs averaged equivalence", equivalence),
        ("norming conditions", conditions),
        ("determinism", determinism),
        ("sampler calibration", sampler_calibration),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let o = check();
        println!(
            "{} {name}: {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
