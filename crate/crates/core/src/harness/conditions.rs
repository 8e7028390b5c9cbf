//! Checks of the two sufficient conditions on a norming sequence `d_n`:
//! power growth `d_l/d_k ≳ (l/k)^γ` for `l ≥ k ≥ n0`, and the first-moment
//! bound `E|(S_n − μn)/d_n| ≲ exp(γ'(log n)^(1−ε))`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::tolerances::{GROWTH_MARGIN, MOMENT_SLACK};
use crate::rng::{derive_seed, stream_rng};
use crate::stable::{InputLaw, NormingSequence};

/// Up to `points` distinct integers log-spaced over `[lo, hi]`, always
/// including both ends.
pub fn log_spaced(lo: usize, hi: usize, points: usize) -> Vec<usize> {
    assert!(lo >= 1 && lo <= hi);
    if points <= 1 || lo == hi {
        return vec![hi];
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<usize> = (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp().round() as usize)
        .map(|n| n.clamp(lo, hi))
        .collect();
    out[0] = lo;
    *out.last_mut().unwrap() = hi;
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairRatio {
    pub k: usize,
    pub l: usize,
    /// `(d_l/d_k) / (l/k)^γ`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub gamma: f64,
    pub n0: usize,
    pub n: usize,
    /// Smallest ratio over the sampled pairs.
    pub margin: f64,
    pub threshold: f64,
    pub pass: bool,
    pub pairs: Vec<PairRatio>,
}

/// Evaluates `(d_l/d_k)/(l/k)^γ` over all pairs of a log-spaced grid of
/// `points` values in `[n0, n]`; passes when the minimum is at least
/// [`GROWTH_MARGIN`].
pub fn check_growth_condition(
    seq: &NormingSequence,
    gamma: f64,
    n0: usize,
    n: usize,
    points: usize,
) -> Result<GrowthReport> {
    seq.validate()?;
    if n0 == 0 || n0 > n {
        return Err(Error::Config(format!("need 1 <= n0 = {n0} <= n = {n}")));
    }
    let grid = log_spaced(n0, n, points);
    let mut pairs = Vec::with_capacity(grid.len() * (grid.len() + 1) / 2);
    for (i, &k) in grid.iter().enumerate() {
        for &l in &grid[i..] {
            // Work in logs so the exact power law gives exactly 1 when it can.
            let log_ratio = (seq.value(l) / seq.value(k)).ln() - gamma * (l as f64 / k as f64).ln();
            pairs.push(PairRatio {
                k,
                l,
                ratio: log_ratio.exp(),
            });
        }
    }
    let margin = pairs.iter().map(|p| p.ratio).fold(f64::INFINITY, f64::min);
    Ok(GrowthReport {
        gamma,
        n0,
        n,
        margin,
        threshold: GROWTH_MARGIN,
        pass: margin >= GROWTH_MARGIN,
        pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentRow {
    pub n: usize,
    /// Monte Carlo estimate of `E|(S_n − μn)/d_n|`.
    pub mean_abs: f64,
    /// `exp(γ' (ln n)^(1−ε))`.
    pub envelope: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub gamma_prime: f64,
    pub epsilon: f64,
    pub replications: usize,
    /// Ratio at the smallest grid point.
    pub fitted_constant: f64,
    pub max_ratio: f64,
    pub slack: f64,
    pub pass: bool,
    pub rows: Vec<MomentRow>,
}

/// Estimates `E|(S_n − μn)/d_n|` at every grid point from `replications`
/// independent trajectories and passes when the ratio to the envelope never
/// exceeds [`MOMENT_SLACK`] times its value at the smallest grid point.
pub fn check_moment_condition<R: Rng + ?Sized>(
    law: &InputLaw,
    seq: &NormingSequence,
    gamma_prime: f64,
    epsilon: f64,
    n_grid: &[usize],
    replications: usize,
    rng: &mut R,
) -> Result<MomentReport> {
    law.validate()?;
    seq.validate()?;
    if n_grid.is_empty() || n_grid[0] == 0 || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(
            "moment grid must be strictly increasing positive integers".into(),
        ));
    }
    if replications == 0 {
        return Err(Error::Config("replications must be >= 1".into()));
    }
    let mu = law.mean();
    let n_max = *n_grid.last().unwrap();
    let seed = derive_seed(rng);
    let per_rep: Vec<Vec<f64>> = (0..replications as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, r);
            let mut buf = vec![0.0; 4096];
            let mut out = Vec::with_capacity(n_grid.len());
            let mut s = 0.0;
            let mut done = 0usize;
            let mut next = 0usize;
            while done < n_max {
                let len = buf.len().min(n_max - done);
                law.fill(&mut buf[..len], &mut rng).expect("validated law");
                for &y in &buf[..len] {
                    s += y;
                    done += 1;
                    if next < n_grid.len() && done == n_grid[next] {
                        out.push((s - mu * done as f64).abs() / seq.value(done));
                        next += 1;
                    }
                }
            }
            out
        })
        .collect();
    let rows: Vec<MomentRow> = n_grid
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let mean_abs = per_rep.iter().map(|v| v[i]).sum::<f64>() / replications as f64;
            let envelope = (gamma_prime * (n as f64).ln().powf(1.0 - epsilon)).exp();
            MomentRow {
                n,
                mean_abs,
                envelope,
                ratio: mean_abs / envelope,
            }
        })
        .collect();
    let fitted_constant = rows[0].ratio;
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(MomentReport {
        gamma_prime,
        epsilon,
        replications,
        fitted_constant,
        max_ratio,
        slack: MOMENT_SLACK,
        pass: max_ratio <= MOMENT_SLACK * fitted_constant,
        rows,
    })
}
