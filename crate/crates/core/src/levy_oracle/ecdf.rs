//! Empirical and analytic distribution functions and the Kolmogorov-Smirnov
//! distance between them.

use std::f64::consts::SQRT_2;
use std::io::Write;

use crate::error::{Error, Result};

/// A distribution function that can be compared by [`ks_distance`].
///
/// Continuous CDFs only need [`Cdf::cdf`]. CDFs with atoms also report the
/// left limit and their jump points so the supremum is computed exactly.
pub trait Cdf {
    /// `F(x) = P(X <= x)`.
    fn cdf(&self, x: f64) -> f64;

    /// `F(x-) = P(X < x)`.
    fn cdf_left(&self, x: f64) -> f64 {
        self.cdf(x)
    }

    /// Points where `F` jumps, ascending.
    fn jump_points(&self) -> &[f64] {
        &[]
    }
}

impl<C: Cdf + ?Sized> Cdf for &C {
    fn cdf(&self, x: f64) -> f64 {
        (**self).cdf(x)
    }
    fn cdf_left(&self, x: f64) -> f64 {
        (**self).cdf_left(x)
    }
    fn jump_points(&self) -> &[f64] {
        (**self).jump_points()
    }
}

/// Sorted sample with `F(x) = #{samples <= x} / M`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalCdf {
    samples: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Empty("empirical CDF needs at least one sample"));
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::NotANumber("empirical CDF sample"));
        }
        samples.sort_unstable_by(f64::total_cmp);
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Merges two sorted blocks; associative and commutative.
    pub fn merge(self, other: EmpiricalCdf) -> EmpiricalCdf {
        let (a, b) = (self.samples, other.samples);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].total_cmp(&b[j]).is_le() {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        EmpiricalCdf { samples: out }
    }

    /// Applies a nondecreasing map to every sample (e.g. `exp`).
    pub fn map_monotone(self, f: impl Fn(f64) -> f64) -> Result<EmpiricalCdf> {
        EmpiricalCdf::new(self.samples.into_iter().map(f).collect())
    }

    /// Empirical `q`-quantile (lower, type-1).
    pub fn quantile(&self, q: f64) -> f64 {
        let m = self.samples.len();
        let q = q.clamp(0.0, 1.0);
        let idx = ((q * m as f64).ceil() as usize).clamp(1, m) - 1;
        self.samples[idx]
    }

    pub fn median(&self) -> f64 {
        let m = self.samples.len();
        if m % 2 == 1 {
            self.samples[m / 2]
        } else {
            0.5 * (self.samples[m / 2 - 1] + self.samples[m / 2])
        }
    }

    /// Median absolute deviation around the median.
    pub fn mad(&self) -> f64 {
        let med = self.median();
        let dev = self.samples.iter().map(|x| (x - med).abs()).collect::<Vec<_>>();
        EmpiricalCdf::new(dev).expect("nonempty").median()
    }

    /// `(x - median) / MAD` applied to every sample. Fails when the MAD is 0.
    pub fn standardized(&self) -> Result<EmpiricalCdf> {
        let med = self.median();
        let mad = self.mad();
        if !(mad > 0.0) {
            return Err(Error::InvalidParameter {
                name: "mad",
                value: mad,
                reason: "cannot standardize a sample with zero spread",
            });
        }
        // Increasing affine map keeps the order.
        Ok(EmpiricalCdf {
            samples: self.samples.iter().map(|x| (x - med) / mad).collect(),
        })
    }

    /// Distinct sample values with `F` evaluated just after each.
    pub fn steps(&self) -> Vec<(f64, f64)> {
        let m = self.samples.len() as f64;
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (i, &x) in self.samples.iter().enumerate() {
            let f = (i + 1) as f64 / m;
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 = f,
                _ => out.push((x, f)),
            }
        }
        out
    }

    /// Two-column CSV `x,cdf` at the jump points.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,cdf")?;
        for (x, f) in self.steps() {
            writeln!(w, "{x},{f}")?;
        }
        Ok(())
    }

    fn count_le(&self, x: f64) -> usize {
        self.samples.partition_point(|&s| s <= x)
    }

    fn count_lt(&self, x: f64) -> usize {
        self.samples.partition_point(|&s| s < x)
    }
}

impl Cdf for EmpiricalCdf {
    fn cdf(&self, x: f64) -> f64 {
        self.count_le(x) as f64 / self.samples.len() as f64
    }

    fn cdf_left(&self, x: f64) -> f64 {
        self.count_lt(x) as f64 / self.samples.len() as f64
    }

    fn jump_points(&self) -> &[f64] {
        &self.samples
    }
}

/// Standard normal CDF.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// `N(mean, sd^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalCdf {
    pub mean: f64,
    pub sd: f64,
}

impl Cdf for NormalCdf {
    fn cdf(&self, x: f64) -> f64 {
        std_normal_cdf((x - self.mean) / self.sd)
    }
}

/// CDF of `exp(Y)` given the CDF of `Y`.
#[derive(Clone, Debug)]
pub struct ExpOf<C>(pub C);

impl<C: Cdf> Cdf for ExpOf<C> {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            self.0.cdf(x.ln())
        }
    }
    fn cdf_left(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            self.0.cdf_left(x.ln())
        }
    }
}

/// Uniform law on `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformCdf {
    pub lo: f64,
    pub hi: f64,
}

impl Cdf for UniformCdf {
    fn cdf(&self, x: f64) -> f64 {
        ((x - self.lo) / (self.hi - self.lo)).clamp(0.0, 1.0)
    }
}

/// Point mass at `at`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointMass {
    at: [f64; 1],
}

impl PointMass {
    pub fn new(at: f64) -> Self {
        Self { at: [at] }
    }
}

impl Cdf for PointMass {
    fn cdf(&self, x: f64) -> f64 {
        if x >= self.at[0] {
            1.0
        } else {
            0.0
        }
    }
    fn cdf_left(&self, x: f64) -> f64 {
        if x > self.at[0] {
            1.0
        } else {
            0.0
        }
    }
    fn jump_points(&self) -> &[f64] {
        &self.at
    }
}

/// `sup_x |F_a(x) - F_b(x)|`.
///
/// Both CDFs are right-continuous and `F_a` is a step function, so the
/// supremum is attained at a jump point of either input, either at the point
/// itself or as the left limit there.
pub fn ks_distance<B: Cdf + ?Sized>(a: &EmpiricalCdf, b: &B) -> f64 {
    let mut sup = 0.0f64;
    let mut visit = |x: f64| {
        let right = (a.cdf(x) - b.cdf(x)).abs();
        let left = (a.cdf_left(x) - b.cdf_left(x)).abs();
        sup = sup.max(right).max(left);
    };
    let xs = a.samples();
    let mut i = 0;
    while i < xs.len() {
        visit(xs[i]);
        let x = xs[i];
        while i < xs.len() && xs[i] == x {
            i += 1;
        }
    }
    for &x in b.jump_points() {
        visit(x);
    }
    sup.min(1.0)
}

/// Two-sample KS statistic by a merge walk over both sorted samples.
pub fn ks_two_sample(a: &EmpiricalCdf, b: &EmpiricalCdf) -> f64 {
    let (xs, ys) = (a.samples(), b.samples());
    let (m, n) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut sup = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let x = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= x {
            i += 1;
        }
        while j < ys.len() && ys[j] <= x {
            j += 1;
        }
        sup = sup.max((i as f64 / m - j as f64 / n).abs());
    }
    sup
}
