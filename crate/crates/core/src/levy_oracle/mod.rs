//! Stable Lévy process paths, the singular integral `∫_0^t L(s)/s ds`, and
//! oracle samplers for its law.
//!
//! The oracle has two independent routes. Path integration simulates a
//! discretized process and integrates it; the closed form uses
//! `∫_0^t L(s)/s ds =d (t Γ(α+1))^(1/α) L(1)`, which follows from
//! `∫_0^t L(s)/s ds = ∫_0^t ln(t/u) dL(u)` and `∫_0^t ln(t/u)^α du = t Γ(α+1)`.
//! At `t = 1` and `α = 2` this is `√2 N(0, 1)`.

mod ecdf;

pub use ecdf::{
    ks_distance, ks_two_sample, std_normal_cdf, Cdf, EmpiricalCdf, ExpOf, NormalCdf, PointMass,
    UniformCdf,
};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::rng::{derive_seed, stream_rng};
use crate::stable::{Stable, StableParams};
use crate::summation::NeumaierSum;

/// Default number of grid steps on `[0, 1]` for oracle paths.
pub const DEFAULT_PATH_STEPS: usize = 10_000;
/// Default oracle sample size.
pub const DEFAULT_ORACLE_SAMPLES: usize = 10_000;

/// Guard against `0.999999`-style truncation when snapping `t` to a grid.
pub(crate) const FLOOR_GUARD: f64 = 1e-9;

/// `⌊x·n⌋` with a small guard so exact grid points are not lost to rounding.
#[inline]
pub(crate) fn grid_index(t: f64, n: usize) -> usize {
    let k = (t * n as f64 + FLOOR_GUARD).floor();
    if k <= 0.0 {
        0
    } else {
        (k as usize).min(n)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(invalid("alpha", alpha, "Lévy paths need alpha in (1, 2]"))
    }
}

fn check_t(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(invalid("t", t, "must lie in [0, 1]"))
    }
}

/// A totally right-skewed (`β = 1`) α-stable Lévy process sampled at
/// `s_i = i/m`, `i = 0..=m`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevyPath {
    alpha: f64,
    values: Vec<f64>,
}

impl LevyPath {
    /// Simulates a path with i.i.d. increments of scale `(1/m)^(1/α)`.
    pub fn simulate<R: Rng + ?Sized>(alpha: f64, m: usize, rng: &mut R) -> Result<Self> {
        check_alpha(alpha)?;
        if m < 2 {
            return Err(Error::OutOfRange {
                what: "grid size m",
                value: m,
                lo: 2,
                hi: usize::MAX,
            });
        }
        let stable = Stable::new(StableParams::new(alpha, 1.0)?)?;
        let step_scale = (m as f64).powf(-1.0 / alpha);
        let mut values = Vec::with_capacity(m + 1);
        values.push(0.0);
        let mut level = NeumaierSum::ZERO;
        for _ in 0..m {
            level += step_scale * stable.sample_standard(rng);
            values.push(level.value());
        }
        Ok(Self { alpha, values })
    }

    /// Wraps precomputed values; `values[0]` must be 0.
    pub fn from_values(alpha: f64, values: Vec<f64>) -> Result<Self> {
        check_alpha(alpha)?;
        if values.len() < 3 {
            return Err(Error::OutOfRange {
                what: "path length",
                value: values.len(),
                lo: 3,
                hi: usize::MAX,
            });
        }
        if values[0] != 0.0 {
            return Err(invalid("values[0]", values[0], "a Lévy path starts at 0"));
        }
        Ok(Self { alpha, values })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Number of grid steps `m`.
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `L(1)`.
    pub fn terminal(&self) -> f64 {
        *self.values.last().expect("nonempty path")
    }

    /// The path restricted to every `factor`-th grid point.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        let m = self.steps();
        if factor == 0 || !m.is_multiple_of(factor) || m / factor < 2 {
            return Err(Error::OutOfRange {
                what: "coarsening factor",
                value: factor,
                lo: 1,
                hi: m / 2,
            });
        }
        Ok(Self {
            alpha: self.alpha,
            values: self.values.iter().step_by(factor).copied().collect(),
        })
    }

    /// `I_k ≈ ∫_0^{k/m} L(s)/s ds` for every `k = 0..=m`.
    ///
    /// The first cell interpolates `L` linearly from 0, so its contribution
    /// is exactly `values[1]`; later cells use left-endpoint values of both
    /// `L` and `1/s`, giving `values[i] / i` for cell `i`.
    pub fn cumulative_log_integral(&self) -> Vec<f64> {
        let m = self.steps();
        let mut out = Vec::with_capacity(m + 1);
        out.push(0.0);
        let mut acc = NeumaierSum::new(self.values[1]);
        out.push(acc.value());
        for i in 1..m {
            acc += self.values[i] / i as f64;
            out.push(acc.value());
        }
        out
    }

    /// `∫_0^t L(s)/s ds` with `t` snapped down to the grid.
    pub fn log_integral(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        let k = grid_index(t, self.steps());
        if k == 0 {
            return Ok(0.0);
        }
        let mut acc = NeumaierSum::new(self.values[1]);
        for i in 1..k {
            acc += self.values[i] / i as f64;
        }
        Ok(acc.value())
    }
}

pub fn simulate_levy_path<R: Rng + ?Sized>(alpha: f64, m: usize, rng: &mut R) -> Result<LevyPath> {
    LevyPath::simulate(alpha, m, rng)
}

pub fn levy_log_integral(path: &LevyPath, t: f64) -> Result<f64> {
    path.log_integral(t)
}

/// Sampler for the law of `∫_0^t L_α(s)/s ds`, `t ∈ (0, 1]`.
#[derive(Clone, Copy, Debug)]
pub struct LimitOracle {
    alpha: f64,
    path_steps: usize,
}

impl LimitOracle {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            alpha,
            path_steps: DEFAULT_PATH_STEPS,
        })
    }

    pub fn with_path_steps(mut self, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::OutOfRange {
                what: "grid size m",
                value: m,
                lo: 2,
                hi: usize::MAX,
            });
        }
        self.path_steps = m;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn path_steps(&self) -> usize {
        self.path_steps
    }

    /// Scale of the integral at `t`: `(t Γ(α+1))^(1/α)`.
    pub fn closed_form_scale(&self, t: f64) -> f64 {
        (t * libm::tgamma(self.alpha + 1.0)).powf(1.0 / self.alpha)
    }

    /// `M` draws of `(t Γ(α+1))^(1/α) · L_α` with `L_α` stable(α, β = 1).
    pub fn closed_form<R: Rng + ?Sized>(&self, t: f64, samples: usize, rng: &mut R) -> Result<EmpiricalCdf> {
        check_positive_t(t)?;
        let stable = Stable::new(StableParams::new(self.alpha, 1.0)?)?;
        let scale = self.closed_form_scale(t);
        let xs = (0..samples)
            .map(|_| scale * stable.sample_standard(rng))
            .collect();
        EmpiricalCdf::new(xs)
    }

    /// `M` path-integrated draws at each `t` in `ts`, one simulated path per
    /// draw shared across all `t`.
    pub fn path_integrated<R: Rng + ?Sized>(
        &self,
        ts: &[f64],
        samples: usize,
        rng: &mut R,
    ) -> Result<Vec<EmpiricalCdf>> {
        for &t in ts {
            check_positive_t(t)?;
        }
        if samples == 0 {
            return Err(Error::Empty("oracle sample size must be >= 1"));
        }
        let seed = derive_seed(rng);
        let m = self.path_steps;
        let ks: Vec<usize> = ts.iter().map(|&t| grid_index(t, m)).collect();
        let draws: Vec<Vec<f64>> = (0..samples as u64)
            .into_par_iter()
            .map(|j| {
                let mut r = stream_rng(seed, j);
                let path = LevyPath::simulate(self.alpha, m, &mut r).expect("validated");
                let cum = path.cumulative_log_integral();
                ks.iter().map(|&k| cum[k]).collect()
            })
            .collect::<Vec<_>>();
        (0..ts.len())
            .map(|c| EmpiricalCdf::new(draws.iter().map(|row| row[c]).collect()))
            .collect()
    }

    /// Closed form at `t = 1`, path integration otherwise.
    pub fn sample<R: Rng + ?Sized>(&self, t: f64, samples: usize, rng: &mut R) -> Result<EmpiricalCdf> {
        check_positive_t(t)?;
        if t == 1.0 {
            self.closed_form(t, samples, rng)
        } else {
            Ok(self
                .path_integrated(&[t], samples, rng)?
                .pop()
                .expect("one t requested"))
        }
    }
}

fn check_positive_t(t: f64) -> Result<()> {
    check_t(t)?;
    if t == 0.0 {
        return Err(invalid(
            "t",
            t,
            "the integral at t = 0 is a point mass at 0; handle it separately",
        ));
    }
    Ok(())
}

/// `M` samples of `∫_0^t L_α(s)/s ds` with the default grid.
pub fn oracle_limit_sampler<R: Rng + ?Sized>(
    alpha: f64,
    t: f64,
    samples: usize,
    rng: &mut R,
) -> Result<EmpiricalCdf> {
    LimitOracle::new(alpha)?.sample(t, samples, rng)
}
