use std::io::Write;
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::conditions::{
    check_growth_condition, check_moment_condition, log_spaced, GrowthReport, MomentReport,
};
use crate::harness::config::{ExperimentConfig, Scenario};
use crate::harness::report::{csv_file, finish, Gate, Provenance, RunReport, ScenarioResult};
use crate::harness::tolerances::*;
use crate::levy_oracle::{
    grid_index, ks_distance, ks_two_sample, Cdf, EmpiricalCdf, ExpOf, LimitOracle, NormalCdf,
};
use crate::log_average::{cesaro_row, LogAvgAccumulator};
use crate::processes::Trajectory;
use crate::rng::stream_rng;

/// Stream used for oracle draws (counting down for several oracles).
pub const ORACLE_STREAM: u64 = u64::MAX;

/// Limit law of `∫_0^t L(s)/s ds`: exact Gaussian at `α = 2`, empirical
/// otherwise.
#[derive(Clone, Debug)]
pub enum LimitCdf {
    Gaussian(NormalCdf),
    Empirical(EmpiricalCdf),
}

impl Cdf for LimitCdf {
    fn cdf(&self, x: f64) -> f64 {
        match self {
            LimitCdf::Gaussian(c) => c.cdf(x),
            LimitCdf::Empirical(c) => c.cdf(x),
        }
    }
    fn cdf_left(&self, x: f64) -> f64 {
        match self {
            LimitCdf::Gaussian(c) => c.cdf_left(x),
            LimitCdf::Empirical(c) => c.cdf_left(x),
        }
    }
    fn jump_points(&self) -> &[f64] {
        match self {
            LimitCdf::Gaussian(c) => c.jump_points(),
            LimitCdf::Empirical(c) => c.jump_points(),
        }
    }
}

struct LimitLaws {
    samples: Vec<EmpiricalCdf>,
    cdfs: Vec<LimitCdf>,
}

/// Oracle draws for every `t`: closed form at `t = 1`, path integration
/// (one shared set of paths) for `t < 1`.
fn limit_laws<R: Rng + ?Sized>(
    alpha: f64,
    ts: &[f64],
    cfg: &ExperimentConfig,
    rng: &mut R,
) -> Result<LimitLaws> {
    let oracle = LimitOracle::new(alpha)?.with_path_steps(cfg.oracle_steps)?;
    let inner: Vec<f64> = ts.iter().copied().filter(|&t| t < 1.0).collect();
    let mut path_draws = if inner.is_empty() {
        Vec::new()
    } else {
        oracle.path_integrated(&inner, cfg.oracle_samples, rng)?
    }
    .into_iter();
    let mut samples = Vec::with_capacity(ts.len());
    for &t in ts {
        if t < 1.0 {
            samples.push(path_draws.next().expect("one draw set per inner t"));
        } else {
            samples.push(oracle.closed_form(t, cfg.oracle_samples, rng)?);
        }
    }
    let cdfs = ts
        .iter()
        .zip(&samples)
        .map(|(&t, s)| {
            if alpha == 2.0 {
                LimitCdf::Gaussian(NormalCdf {
                    mean: 0.0,
                    sd: (2.0 * t).sqrt(),
                })
            } else {
                LimitCdf::Empirical(s.clone())
            }
        })
        .collect();
    Ok(LimitLaws { samples, cdfs })
}

/// `points` quantiles of the pooled samples, evenly spaced in probability
/// over `[lo, hi]`, with duplicates removed.
pub fn quantile_grid(pooled: &EmpiricalCdf, points: usize, [lo, hi]: [f64; 2]) -> Vec<f64> {
    let mut grid: Vec<f64> = (0..points)
        .map(|i| pooled.quantile(lo + (hi - lo) * i as f64 / (points - 1).max(1) as f64))
        .collect();
    grid.dedup();
    grid
}

fn pooled(samples: &[EmpiricalCdf], f: impl Fn(f64) -> f64) -> Result<EmpiricalCdf> {
    EmpiricalCdf::new(
        samples
            .iter()
            .flat_map(|s| s.samples().iter().map(|&x| f(x)))
            .collect(),
    )
}

fn median(values: &[f64]) -> f64 {
    quantile_linear(values, 0.5)
}

/// Linear-interpolation sample quantile.
fn quantile_linear(values: &[f64], q: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    let h = q * (v.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

fn trajectory_for(cfg: &ExperimentConfig, replication: u64) -> Result<Trajectory> {
    let mut rng = stream_rng(cfg.seed, replication);
    let y = cfg.input_law.sample(cfg.n, &mut rng)?;
    Trajectory::new(y, cfg.input_law.mean())
}

fn provenance(cfg: &ExperimentConfig, replications: u64, oracle_streams: Vec<u64>, x_grid: Option<Vec<f64>>) -> Provenance {
    Provenance {
        config_hash: cfg.hash(),
        base_seed: cfg.seed,
        replication_streams: [0, replications],
        oracle_streams,
        t_grid: cfg.t_grid.clone(),
        x_grid,
    }
}

fn expect_scenario(cfg: &ExperimentConfig, want: Scenario) -> Result<()> {
    cfg.validate()?;
    if cfg.scenario != want {
        return Err(Error::Config(format!(
            "config is for scenario `{}`, not `{want}`",
            cfg.scenario
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Almost-sure limit of the product functional

#[derive(Clone, Debug, Serialize)]
pub struct TDistances {
    pub t: f64,
    pub per_seed: Vec<f64>,
    pub median: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckpointDistances {
    pub n: usize,
    pub per_t: Vec<TDistances>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsclReport {
    pub alpha: f64,
    pub mu: f64,
    pub oracle: &'static str,
    /// Grid KS between the log-average CDF of `π_n(t)` and the limit CDF,
    /// per checkpoint (ascending, final `N` last).
    pub distances: Vec<CheckpointDistances>,
    pub gates: Vec<Gate>,
    #[serde(skip)]
    pub accumulators: Vec<LogAvgAccumulator>,
    #[serde(skip)]
    oracle_table: Vec<(f64, f64, f64)>,
}

impl AsclReport {
    /// Median distance at `n` for the `t_idx`-th grid point.
    pub fn median_ks(&self, n: usize, t_idx: usize) -> Option<f64> {
        self.distances
            .iter()
            .find(|c| c.n == n)
            .map(|c| c.per_t[t_idx].median)
    }

    pub(crate) fn write_tables(&self, dir: &Path) -> Result<()> {
        for (i, acc) in self.accumulators.iter().enumerate() {
            let w = csv_file(dir, &format!("logavg_seed{i:03}.csv"))?;
            let mut w = w;
            acc.write_csv(&mut w)?;
            finish(w)?;
        }
        let mut w = csv_file(dir, "oracle_cdf.csv")?;
        writeln!(w, "t,x,oracle_cdf")?;
        for (t, x, f) in &self.oracle_table {
            writeln!(w, "{t},{x},{f}")?;
        }
        finish(w)
    }
}

/// Path-wise logarithmic averages of `I(π_n(t) ≤ x)` along one trajectory
/// per seed, compared with the CDF of `exp(∫_0^t L(s)/s ds)`.
pub fn run_ascl_experiment(cfg: &ExperimentConfig) -> Result<AsclReport> {
    expect_scenario(cfg, Scenario::AsclProduct)?;
    let alpha = cfg.limit_alpha();
    let seq = cfg.norming_sequence()?;
    let mu = cfg.input_law.mean();
    let ts = &cfg.t_grid;

    let laws = limit_laws(alpha, ts, cfg, &mut stream_rng(cfg.seed, ORACLE_STREAM))?;
    let x_grid = quantile_grid(&pooled(&laws.samples, f64::exp)?, cfg.x_points, cfg.x_quantiles);

    let mut marks: Vec<usize> = cfg.checkpoints.clone();
    marks.push(cfg.n);
    marks.sort_unstable();
    marks.dedup();

    let snapshots: Vec<Vec<LogAvgAccumulator>> = (0..cfg.replications as u64)
        .into_par_iter()
        .map(|r| -> Result<Vec<LogAvgAccumulator>> {
            let traj = trajectory_for(cfg, r)?;
            let mut acc = LogAvgAccumulator::new(x_grid.clone(), ts.clone())?;
            let mut values = vec![0.0; ts.len()];
            let mut out = Vec::with_capacity(marks.len());
            let mut next = 0;
            for n in 1..=cfg.n {
                let a_n = seq.value(n);
                for (v, &t) in values.iter_mut().zip(ts) {
                    *v = traj.pi_value(a_n, n, t)?;
                }
                acc.accumulate(n, &values)?;
                if n == marks[next] {
                    out.push(acc.clone());
                    next += 1;
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let targets: Vec<ExpOf<&LimitCdf>> = laws.cdfs.iter().map(ExpOf).collect();
    let mut distances = Vec::with_capacity(marks.len());
    for (c, &n) in marks.iter().enumerate() {
        let mut per_t = Vec::with_capacity(ts.len());
        for (ti, &t) in ts.iter().enumerate() {
            let per_seed = snapshots
                .iter()
                .map(|s| Ok(s[c].to_cdf(ti)?.ks_on_grid(&targets[ti])))
                .collect::<Result<Vec<f64>>>()?;
            per_t.push(TDistances {
                t,
                median: median(&per_seed),
                per_seed,
            });
        }
        distances.push(CheckpointDistances { n, per_t });
    }

    // Gates at the largest t in the grid.
    let gate_t = ts.len() - 1;
    let final_median = distances.last().unwrap().per_t[gate_t].median;
    let mut gates = vec![Gate::at_most(
        format!("median KS at N={} t={}", cfg.n, ts[gate_t]),
        final_median,
        ASCL_KS,
    )];
    if marks.len() > 1 {
        let early = &distances[0];
        gates.push(Gate::below(
            format!(
                "median KS at N={} below median KS at N={} (t={})",
                cfg.n, early.n, ts[gate_t]
            ),
            final_median,
            early.per_t[gate_t].median,
        ));
    }

    let mut oracle_table = Vec::with_capacity(ts.len() * x_grid.len());
    for (ti, &t) in ts.iter().enumerate() {
        for &x in &x_grid {
            oracle_table.push((t, x, targets[ti].cdf(x)));
        }
    }

    Ok(AsclReport {
        alpha,
        mu,
        oracle: if alpha == 2.0 { "gaussian" } else { "empirical" },
        distances,
        gates,
        accumulators: snapshots.into_iter().map(|mut s| s.pop().unwrap()).collect(),
        oracle_table,
    })
}

// ---------------------------------------------------------------------------
// Path-wise versus averaged-probability log averages

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceCell {
    pub t: f64,
    pub x: f64,
    pub median: f64,
    pub pooled: f64,
    pub iqr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceSummary {
    pub replications: usize,
    pub n: usize,
    /// Largest `|median − pooled|` over the grid.
    pub max_gap: f64,
    pub max_iqr: f64,
    #[serde(skip)]
    pub cells: Vec<EquivalenceCell>,
}

/// Compares per-replication path-wise estimates with the pooled
/// averaged-probability estimate on every grid cell.
pub fn equivalence_summary(accs: &[LogAvgAccumulator]) -> Result<EquivalenceSummary> {
    let first = accs
        .first()
        .ok_or(Error::Empty("equivalence needs at least one replication"))?;
    let mut cells = Vec::new();
    for (ti, &t) in first.t_grid().iter().enumerate() {
        let pooled = cesaro_row(accs, ti)?;
        let rows = accs
            .iter()
            .map(|a| a.query_row(ti))
            .collect::<Result<Vec<_>>>()?;
        for (xi, &x) in first.x_grid().iter().enumerate() {
            let vals: Vec<f64> = rows.iter().map(|r| r[xi]).collect();
            cells.push(EquivalenceCell {
                t,
                x,
                median: median(&vals),
                pooled: pooled[xi],
                iqr: quantile_linear(&vals, 0.75) - quantile_linear(&vals, 0.25),
            });
        }
    }
    Ok(EquivalenceSummary {
        replications: accs.len(),
        n: first.n(),
        max_gap: cells
            .iter()
            .map(|c| (c.median - c.pooled).abs())
            .fold(0.0, f64::max),
        max_iqr: cells.iter().map(|c| c.iqr).fold(0.0, f64::max),
        cells,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub alpha: f64,
    pub summary: EquivalenceSummary,
    /// Grid KS of the clamped pooled estimate against the limit law, per t
    /// (informational).
    pub pooled_ks: Vec<f64>,
    pub gates: Vec<Gate>,
    #[serde(skip)]
    oracle_table: Vec<(f64, f64, f64)>,
}

impl EquivalenceReport {
    pub(crate) fn write_tables(&self, dir: &Path) -> Result<()> {
        let mut w = csv_file(dir, "equivalence_cells.csv")?;
        writeln!(w, "t,x,median,pooled,iqr")?;
        for c in &self.summary.cells {
            writeln!(w, "{},{},{},{},{}", c.t, c.x, c.median, c.pooled, c.iqr)?;
        }
        finish(w)?;
        let mut w = csv_file(dir, "oracle_cdf.csv")?;
        writeln!(w, "t,x,oracle_cdf")?;
        for (t, x, f) in &self.oracle_table {
            writeln!(w, "{t},{x},{f}")?;
        }
        finish(w)
    }
}

/// Per-replication path-wise log averages of `I(s_n(t) ≤ x)` against their
/// pooled average.
pub fn run_equivalence_experiment(cfg: &ExperimentConfig) -> Result<(EquivalenceReport, Vec<f64>)> {
    expect_scenario(cfg, Scenario::Equivalence)?;
    let alpha = cfg.limit_alpha();
    let seq = cfg.norming_sequence()?;
    let ts = &cfg.t_grid;

    let laws = limit_laws(alpha, ts, cfg, &mut stream_rng(cfg.seed, ORACLE_STREAM))?;
    let x_grid = quantile_grid(&pooled(&laws.samples, |x| x)?, cfg.x_points, cfg.x_quantiles);

    let accs: Vec<LogAvgAccumulator> = (0..cfg.replications as u64)
        .into_par_iter()
        .map(|r| -> Result<LogAvgAccumulator> {
            let traj = trajectory_for(cfg, r)?;
            let mut acc = LogAvgAccumulator::new(x_grid.clone(), ts.clone())?;
            let mut values = vec![0.0; ts.len()];
            for n in 1..=cfg.n {
                let d_n = seq.value(n);
                for (v, &t) in values.iter_mut().zip(ts) {
                    *v = traj.s_value(d_n, n, t)?;
                }
                acc.accumulate(n, &values)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let summary = equivalence_summary(&accs)?;
    let mut pooled_ks = Vec::with_capacity(ts.len());
    let mut oracle_table = Vec::new();
    for (ti, &t) in ts.iter().enumerate() {
        let row = cesaro_row(&accs, ti)?;
        let mut ks = 0.0f64;
        for (&x, &p) in x_grid.iter().zip(&row) {
            let f = laws.cdfs[ti].cdf(x);
            ks = ks.max((p.min(1.0) - f).abs());
            oracle_table.push((t, x, f));
        }
        pooled_ks.push(ks);
    }
    let gates = vec![Gate::at_most(
        format!("max |median - pooled| at N={} R={}", cfg.n, cfg.replications),
        summary.max_gap,
        EQUIVALENCE_GAP,
    )];
    Ok((
        EquivalenceReport {
            alpha,
            summary,
            pooled_ks,
            gates,
            oracle_table,
        },
        x_grid,
    ))
}

// ---------------------------------------------------------------------------
// Distributional limit of s_n(t)

#[derive(Clone, Debug, Serialize)]
pub struct WeakLimitRow {
    pub t: f64,
    pub ks: f64,
    pub scale_free: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakLimitReport {
    pub alpha: f64,
    pub n: usize,
    pub replications: usize,
    /// `t` values dropped because `⌊Nt⌋ = 0`.
    pub excluded_t: Vec<f64>,
    pub rows: Vec<WeakLimitRow>,
    pub gates: Vec<Gate>,
    #[serde(skip)]
    simulated: Vec<EmpiricalCdf>,
    #[serde(skip)]
    oracle: Vec<Option<EmpiricalCdf>>,
}

impl WeakLimitReport {
    pub(crate) fn write_tables(&self, dir: &Path) -> Result<()> {
        for (row, (sim, oracle)) in self.rows.iter().zip(self.simulated.iter().zip(&self.oracle)) {
            let mut w = csv_file(dir, &format!("weak_limit_sim_t{}.csv", row.t))?;
            sim.write_csv(&mut w)?;
            finish(w)?;
            if let Some(o) = oracle {
                let mut w = csv_file(dir, &format!("weak_limit_oracle_t{}.csv", row.t))?;
                o.write_csv(&mut w)?;
                finish(w)?;
            }
        }
        Ok(())
    }
}

/// Samples `s_N(t)` over independent trajectories and compares with the
/// law of `∫_0^t L(s)/s ds`: absolutely for `α = 2`, after median/MAD
/// standardization of both samples otherwise.
pub fn run_weak_limit_check(cfg: &ExperimentConfig) -> Result<WeakLimitReport> {
    expect_scenario(cfg, Scenario::WeakLimit)?;
    let alpha = cfg.limit_alpha();
    let seq = cfg.norming_sequence()?;
    let (ts, excluded_t): (Vec<f64>, Vec<f64>) =
        cfg.t_grid.iter().partition(|&&t| grid_index(t, cfg.n) > 0);
    if ts.is_empty() {
        return Err(Error::Config("every t has ⌊Nt⌋ = 0".into()));
    }
    let d_n = seq.value(cfg.n);

    let draws: Vec<Vec<f64>> = (0..cfg.replications as u64)
        .into_par_iter()
        .map(|r| -> Result<Vec<f64>> {
            let traj = trajectory_for(cfg, r)?;
            ts.iter().map(|&t| traj.s_value(d_n, cfg.n, t)).collect()
        })
        .collect::<Result<_>>()?;
    let simulated = (0..ts.len())
        .map(|i| EmpiricalCdf::new(draws.iter().map(|d| d[i]).collect()))
        .collect::<Result<Vec<_>>>()?;

    let scale_free = alpha < 2.0;
    let mut rows = Vec::with_capacity(ts.len());
    let mut gates = Vec::with_capacity(ts.len());
    let mut oracle = Vec::with_capacity(ts.len());
    if scale_free {
        let laws = limit_laws(alpha, &ts, cfg, &mut stream_rng(cfg.seed, ORACLE_STREAM))?;
        for ((&t, sim), o) in ts.iter().zip(&simulated).zip(laws.samples) {
            let ks = ks_two_sample(&sim.standardized()?, &o.standardized()?);
            rows.push(WeakLimitRow { t, ks, scale_free });
            gates.push(Gate::at_most(
                format!("scale-free KS at t={t}"),
                ks,
                WEAK_LIMIT_KS_SCALE_FREE,
            ));
            oracle.push(Some(o));
        }
    } else {
        for (&t, sim) in ts.iter().zip(&simulated) {
            let target = NormalCdf {
                mean: 0.0,
                sd: (2.0 * t).sqrt(),
            };
            let ks = ks_distance(sim, &target);
            rows.push(WeakLimitRow { t, ks, scale_free });
            gates.push(Gate::at_most(format!("KS at t={t}"), ks, WEAK_LIMIT_KS));
            oracle.push(None);
        }
    }
    Ok(WeakLimitReport {
        alpha,
        n: cfg.n,
        replications: cfg.replications,
        excluded_t,
        rows,
        gates,
        simulated,
        oracle,
    })
}

// ---------------------------------------------------------------------------
// Norming conditions

#[derive(Clone, Debug, Serialize)]
pub struct ConditionsReport {
    pub growth: GrowthReport,
    pub moment: MomentReport,
    pub gates: Vec<Gate>,
}

impl ConditionsReport {
    pub(crate) fn write_tables(&self, dir: &Path) -> Result<()> {
        let mut w = csv_file(dir, "growth_margins.csv")?;
        writeln!(w, "k,l,ratio")?;
        for p in &self.growth.pairs {
            writeln!(w, "{},{},{}", p.k, p.l, p.ratio)?;
        }
        finish(w)?;
        let mut w = csv_file(dir, "moment_ratios.csv")?;
        writeln!(w, "n,mean_abs,envelope,ratio")?;
        for r in &self.moment.rows {
            writeln!(w, "{},{},{},{}", r.n, r.mean_abs, r.envelope, r.ratio)?;
        }
        finish(w)
    }
}

pub fn run_conditions(cfg: &ExperimentConfig) -> Result<ConditionsReport> {
    expect_scenario(cfg, Scenario::Conditions)?;
    let seq = cfg.norming_sequence()?;
    let growth = check_growth_condition(&seq, cfg.gamma, cfg.n0, cfg.n, cfg.growth_grid_points)?;
    let grid = log_spaced(cfg.n0, cfg.n, cfg.moment_grid_points);
    let moment = check_moment_condition(
        &cfg.input_law,
        &seq,
        cfg.gamma_prime,
        cfg.epsilon,
        &grid,
        cfg.replications,
        &mut stream_rng(cfg.seed, 0),
    )?;
    let gates = vec![
        Gate::at_least(
            format!("growth margin (gamma={})", cfg.gamma),
            growth.margin,
            growth.threshold,
        ),
        Gate::at_most(
            format!("moment ratio (gamma'={}, eps={})", cfg.gamma_prime, cfg.epsilon),
            moment.max_ratio,
            moment.slack * moment.fitted_constant,
        ),
    ];
    Ok(ConditionsReport {
        growth,
        moment,
        gates,
    })
}

// ---------------------------------------------------------------------------
// Oracle identity

#[derive(Clone, Debug, Serialize)]
pub struct OracleIdentityRow {
    pub alpha: f64,
    /// `(Γ(α+1))^(1/α)`.
    pub scale: f64,
    pub ks_two_sample: f64,
    /// One-sample KS against `√2 N(0, 1)`; `α = 2` only.
    pub ks_gaussian: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleIdentityReport {
    pub path_steps: usize,
    pub samples: usize,
    pub rows: Vec<OracleIdentityRow>,
    pub gates: Vec<Gate>,
    #[serde(skip)]
    draws: Vec<(EmpiricalCdf, EmpiricalCdf)>,
}

impl OracleIdentityReport {
    pub(crate) fn write_tables(&self, dir: &Path) -> Result<()> {
        for (row, (path, closed)) in self.rows.iter().zip(&self.draws) {
            let mut w = csv_file(dir, &format!("oracle_alpha{}_path.csv", row.alpha))?;
            path.write_csv(&mut w)?;
            finish(w)?;
            let mut w = csv_file(dir, &format!("oracle_alpha{}_closed.csv", row.alpha))?;
            closed.write_csv(&mut w)?;
            finish(w)?;
        }
        Ok(())
    }
}

/// `∫_0^1 L(s)/s ds` by path integration against `(Γ(α+1))^(1/α) L_α`.
pub fn run_oracle_identity(cfg: &ExperimentConfig) -> Result<OracleIdentityReport> {
    expect_scenario(cfg, Scenario::OracleIdentity)?;
    let mut rows = Vec::with_capacity(cfg.alphas.len());
    let mut gates = Vec::with_capacity(cfg.alphas.len());
    let mut draws = Vec::with_capacity(cfg.alphas.len());
    for (i, &alpha) in cfg.alphas.iter().enumerate() {
        let mut rng = stream_rng(cfg.seed, ORACLE_STREAM - i as u64);
        let oracle = LimitOracle::new(alpha)?.with_path_steps(cfg.oracle_steps)?;
        let path = oracle
            .path_integrated(&[1.0], cfg.oracle_samples, &mut rng)?
            .pop()
            .unwrap();
        let closed = oracle.closed_form(1.0, cfg.oracle_samples, &mut rng)?;
        let two = ks_two_sample(&path, &closed);
        let gaussian = (alpha == 2.0).then(|| {
            ks_distance(
                &path,
                &NormalCdf {
                    mean: 0.0,
                    sd: std::f64::consts::SQRT_2,
                },
            )
        });
        gates.push(match gaussian {
            Some(ks) => Gate::at_most(format!("alpha={alpha}: KS vs sqrt(2) N(0,1)"), ks, ORACLE_KS_GAUSSIAN),
            None => Gate::at_most(
                format!("alpha={alpha}: two-sample KS path vs closed form"),
                two,
                ORACLE_KS_TWO_SAMPLE,
            ),
        });
        rows.push(OracleIdentityRow {
            alpha,
            scale: oracle.closed_form_scale(1.0),
            ks_two_sample: two,
            ks_gaussian: gaussian,
        });
        draws.push((path, closed));
    }
    Ok(OracleIdentityReport {
        path_steps: cfg.oracle_steps,
        samples: cfg.oracle_samples,
        rows,
        gates,
        draws,
    })
}

// ---------------------------------------------------------------------------

/// Runs the configured scenario and wraps the result with provenance.
pub fn run_scenario(cfg: &ExperimentConfig) -> Result<RunReport> {
    cfg.validate()?;
    let reps = cfg.replications as u64;
    let (result, prov) = match cfg.scenario {
        Scenario::AsclProduct => {
            let r = run_ascl_experiment(cfg)?;
            let x = r.accumulators.first().map(|a| a.x_grid().to_vec());
            (ScenarioResult::Ascl(r), provenance(cfg, reps, vec![ORACLE_STREAM], x))
        }
        Scenario::Equivalence => {
            let (r, x) = run_equivalence_experiment(cfg)?;
            (
                ScenarioResult::Equivalence(r),
                provenance(cfg, reps, vec![ORACLE_STREAM], Some(x)),
            )
        }
        Scenario::WeakLimit => {
            let r = run_weak_limit_check(cfg)?;
            let oracle = if r.rows.iter().any(|w| w.scale_free) {
                vec![ORACLE_STREAM]
            } else {
                Vec::new()
            };
            (ScenarioResult::WeakLimit(r), provenance(cfg, reps, oracle, None))
        }
        Scenario::Conditions => {
            let r = run_conditions(cfg)?;
            (ScenarioResult::Conditions(r), provenance(cfg, 1, Vec::new(), None))
        }
        Scenario::OracleIdentity => {
            let r = run_oracle_identity(cfg)?;
            let streams = (0..cfg.alphas.len() as u64).map(|i| ORACLE_STREAM - i).collect();
            (ScenarioResult::OracleIdentity(r), provenance(cfg, 0, streams, None))
        }
    };
    Ok(RunReport::new(cfg, prov, result))
}
