//! Streaming logarithmic averages
//!
//! ```text
//! (1 / log N) Σ_{n ≤ N} (1/n) I(value_n(t) ≤ x)
//! ```
//!
//! over a fixed `(t, x)` grid, where `log N = ln(max(N, e))`.
//!
//! Each update adds `1/n` to a single bucket per `t` (the first grid point at
//! or above the value); masses are prefix sums over buckets. That keeps an
//! update at `O(|t| log |x|)` and makes accumulators over disjoint `n`-ranges
//! mergeable by bucket-wise addition.

use std::io::Write;

use crate::error::{Error, Result};
use crate::levy_oracle::Cdf;
use crate::summation::NeumaierSum;

/// `ln(max(x, e))`.
#[inline]
pub fn truncated_ln(x: f64) -> f64 {
    x.max(std::f64::consts::E).ln()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogAvgAccumulator {
    x_grid: Vec<f64>,
    t_grid: Vec<f64>,
    first_n: usize,
    last_n: usize,
    weights: NeumaierSum,
    /// Row-major `[t][x]`.
    buckets: Vec<NeumaierSum>,
}

fn check_grid(grid: &[f64], what: &'static str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Empty(what));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::GridMismatch("grid points must be finite"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::GridMismatch("grid must be strictly increasing"));
    }
    Ok(())
}

impl LogAvgAccumulator {
    /// Empty accumulator that expects `n = 1` next.
    pub fn new(x_grid: Vec<f64>, t_grid: Vec<f64>) -> Result<Self> {
        Self::starting_at(x_grid, t_grid, 1)
    }

    /// Empty accumulator over the range starting at `first_n`, for parallel
    /// blocks that are merged afterwards.
    pub fn starting_at(x_grid: Vec<f64>, t_grid: Vec<f64>, first_n: usize) -> Result<Self> {
        check_grid(&x_grid, "x grid")?;
        check_grid(&t_grid, "t grid")?;
        if t_grid[0] <= 0.0 || *t_grid.last().unwrap() > 1.0 {
            return Err(Error::GridMismatch("t grid must lie in (0, 1]"));
        }
        if first_n == 0 {
            return Err(Error::OutOfRange {
                what: "first n",
                value: 0,
                lo: 1,
                hi: usize::MAX,
            });
        }
        let cells = x_grid.len() * t_grid.len();
        Ok(Self {
            x_grid,
            t_grid,
            first_n,
            last_n: first_n - 1,
            weights: NeumaierSum::ZERO,
            buckets: vec![NeumaierSum::ZERO; cells],
        })
    }

    pub fn x_grid(&self) -> &[f64] {
        &self.x_grid
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t_grid
    }

    /// Last `n` processed (`N`); `first_n - 1` when nothing was added.
    pub fn n(&self) -> usize {
        self.last_n
    }

    pub fn first_n(&self) -> usize {
        self.first_n
    }

    /// `Σ 1/n` over the processed range.
    pub fn weights(&self) -> f64 {
        self.weights.value()
    }

    /// Adds step `n` with one functional value per `t`-grid point.
    pub fn accumulate(&mut self, n: usize, values: &[f64]) -> Result<()> {
        let expected = self.last_n + 1;
        if n != expected {
            return Err(Error::OutOfOrder { expected, got: n });
        }
        if values.len() != self.t_grid.len() {
            return Err(Error::GridMismatch("one value per t-grid point is required"));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::NotANumber("accumulated functional value"));
        }
        let w = 1.0 / n as f64;
        let nx = self.x_grid.len();
        for (row, &v) in values.iter().enumerate() {
            // First grid index with x >= v; values above the grid fall off.
            let j = self.x_grid.partition_point(|&x| x < v);
            if j < nx {
                self.buckets[row * nx + j] += w;
            }
        }
        self.weights += w;
        self.last_n = n;
        Ok(())
    }

    /// Combines with the accumulator of the immediately following `n`-range.
    pub fn merge(mut self, other: &LogAvgAccumulator) -> Result<Self> {
        if self.x_grid != other.x_grid || self.t_grid != other.t_grid {
            return Err(Error::GridMismatch("merging accumulators with different grids"));
        }
        if other.first_n != self.last_n + 1 {
            return Err(Error::OutOfOrder {
                expected: self.last_n + 1,
                got: other.first_n,
            });
        }
        for (a, b) in self.buckets.iter_mut().zip(&other.buckets) {
            *a += *b;
        }
        self.weights += other.weights;
        self.last_n = other.last_n;
        Ok(self)
    }

    fn check_cell(&self, t_idx: usize, x_idx: usize) -> Result<()> {
        if t_idx >= self.t_grid.len() {
            return Err(Error::OutOfRange {
                what: "t index",
                value: t_idx,
                lo: 0,
                hi: self.t_grid.len() - 1,
            });
        }
        if x_idx >= self.x_grid.len() {
            return Err(Error::OutOfRange {
                what: "x index",
                value: x_idx,
                lo: 0,
                hi: self.x_grid.len() - 1,
            });
        }
        Ok(())
    }

    /// `Σ_n (1/n) I(value_n(t) ≤ x)` for every `x` in the grid.
    pub fn mass_row(&self, t_idx: usize) -> Result<Vec<f64>> {
        self.check_cell(t_idx, 0)?;
        let nx = self.x_grid.len();
        let mut acc = NeumaierSum::ZERO;
        Ok(self.buckets[t_idx * nx..(t_idx + 1) * nx]
            .iter()
            .map(|b| {
                acc += *b;
                acc.value()
            })
            .collect())
    }

    pub fn mass(&self, t_idx: usize, x_idx: usize) -> Result<f64> {
        self.check_cell(t_idx, x_idx)?;
        Ok(self.mass_row(t_idx)?[x_idx])
    }

    fn denominator(&self) -> f64 {
        truncated_ln(self.last_n as f64)
    }

    /// The logarithmic-average estimate at grid cell `(t_idx, x_idx)`.
    pub fn query(&self, t_idx: usize, x_idx: usize) -> Result<f64> {
        Ok(self.mass(t_idx, x_idx)? / self.denominator())
    }

    /// Query by grid values; `t` and `x` must be grid points.
    pub fn query_at(&self, t: f64, x: f64) -> Result<f64> {
        let ti = self
            .t_grid
            .iter()
            .position(|&g| g == t)
            .ok_or(Error::GridMismatch("t is not a grid point"))?;
        let xi = self
            .x_grid
            .iter()
            .position(|&g| g == x)
            .ok_or(Error::GridMismatch("x is not a grid point"))?;
        self.query(ti, xi)
    }

    /// Estimates for every `x` at `t_idx`.
    pub fn query_row(&self, t_idx: usize) -> Result<Vec<f64>> {
        let d = self.denominator();
        Ok(self.mass_row(t_idx)?.into_iter().map(|m| m / d).collect())
    }

    /// The estimate at `t_idx` as a distribution function on the grid,
    /// clamped to `[0, 1]`.
    pub fn to_cdf(&self, t_idx: usize) -> Result<GridCdf> {
        let values = self
            .query_row(t_idx)?
            .into_iter()
            .map(|q| q.min(1.0))
            .collect();
        Ok(GridCdf {
            x: self.x_grid.clone(),
            f: values,
        })
    }

    /// CSV with columns `t,x,logavg_value,N,weights`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "t,x,logavg_value,N,weights")?;
        let weights = self.weights();
        for (ti, &t) in self.t_grid.iter().enumerate() {
            for (x, q) in self.x_grid.iter().zip(self.query_row(ti)?) {
                writeln!(w, "{t},{x},{q},{},{weights}", self.last_n)?;
            }
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> bool {
        self.x_grid == other.x_grid && self.t_grid == other.t_grid && self.last_n == other.last_n
    }
}

/// Monte Carlo version of the average of probabilities,
/// `(1/log N) Σ_n (1/n) · (fraction of replications with I = 1 at n)`,
/// from `R` independent replications processed to the same `N`.
pub fn cesaro_probability(accs: &[LogAvgAccumulator], t_idx: usize, x_idx: usize) -> Result<f64> {
    Ok(cesaro_row(accs, t_idx)?[x_idx])
}

/// [`cesaro_probability`] for every `x` at `t_idx`.
pub fn cesaro_row(accs: &[LogAvgAccumulator], t_idx: usize) -> Result<Vec<f64>> {
    let first = accs
        .first()
        .ok_or(Error::Empty("cesaro average needs at least one replication"))?;
    if accs.iter().any(|a| !first.same_shape(a)) {
        return Err(Error::GridMismatch(
            "replications must share grids and N",
        ));
    }
    let nx = first.x_grid.len();
    let mut pooled = vec![NeumaierSum::ZERO; nx];
    for acc in accs {
        for (p, m) in pooled.iter_mut().zip(acc.mass_row(t_idx)?) {
            *p += m;
        }
    }
    let reps = accs.len() as f64;
    let d = first.denominator();
    Ok(pooled.into_iter().map(|p| p.value() / reps / d).collect())
}

/// A distribution function known at grid points.
#[derive(Clone, Debug, PartialEq)]
pub struct GridCdf {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
}

impl GridCdf {
    /// `max_i |F̂(x_i) − F(x_i)|` over the grid points.
    pub fn ks_on_grid<C: Cdf + ?Sized>(&self, oracle: &C) -> f64 {
        self.x
            .iter()
            .zip(&self.f)
            .map(|(&x, &f)| (f - oracle.cdf(x)).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acc(xs: &[f64]) -> LogAvgAccumulator {
        LogAvgAccumulator::new(xs.to_vec(), vec![1.0]).unwrap()
    }

    fn harmonic(n: usize) -> f64 {
        (1..=n).map(|k| 1.0 / k as f64).sum()
    }

    #[test]
    fn all_indicators_one() {
        let mut a = acc(&[0.0, 1.0, 2.0]);
        for n in 1..=3 {
            a.accumulate(n, &[-10.0]).unwrap();
        }
        let expect = harmonic(3) / 3f64.ln();
        for xi in 0..3 {
            assert!((a.query(0, xi).unwrap() - expect).abs() < 1e-15);
        }
        assert!((expect - 1.668772).abs() < 1e-6);
    }

    #[test]
    fn all_indicators_zero() {
        let mut a = acc(&[0.0, 1.0]);
        for n in 1..=5 {
            a.accumulate(n, &[3.0]).unwrap();
        }
        assert_eq!(a.query_row(0).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn truncated_log_denominator() {
        let mut a = acc(&[0.0]);
        a.accumulate(1, &[0.0]).unwrap();
        assert_eq!(a.query(0, 0).unwrap(), 1.0);
        a.accumulate(2, &[1.0]).unwrap();
        // ln(max(2, e)) = 1
        assert_eq!(a.query(0, 0).unwrap(), 1.0);
        assert_eq!(truncated_ln(1.0), 1.0);
        assert_eq!(truncated_ln(100.0), 100f64.ln());
    }

    #[test]
    fn empty_mass_queries_zero() {
        let a = acc(&[0.0, 1.0]);
        assert_eq!(a.query(0, 1).unwrap(), 0.0);
    }

    #[test]
    fn indicator_includes_equality() {
        let mut a = acc(&[0.0, 1.0, 2.0]);
        a.accumulate(1, &[1.0]).unwrap();
        assert_eq!(a.query_row(0).unwrap(), vec![0.0, 1.0, 1.0]);
    }

    #[test]
    fn rejects_out_of_order_and_bad_input() {
        let mut a = acc(&[0.0]);
        assert!(matches!(a.accumulate(2, &[0.0]), Err(Error::OutOfOrder { expected: 1, got: 2 })));
        a.accumulate(1, &[0.0]).unwrap();
        assert!(a.accumulate(1, &[0.0]).is_err());
        assert!(a.accumulate(2, &[0.0, 1.0]).is_err());
        assert!(a.accumulate(2, &[f64::NAN]).is_err());
        assert!(LogAvgAccumulator::new(vec![1.0, 0.0], vec![1.0]).is_err());
        assert!(LogAvgAccumulator::new(vec![0.0], vec![0.0]).is_err());
        assert!(LogAvgAccumulator::new(vec![0.0], vec![1.5]).is_err());
    }

    #[test]
    fn merge_requires_adjacent_ranges() {
        let a = acc(&[0.0]);
        let b = LogAvgAccumulator::starting_at(vec![0.0], vec![1.0], 3).unwrap();
        assert!(a.clone().merge(&b).is_err());
        let c = LogAvgAccumulator::new(vec![1.0], vec![1.0]).unwrap();
        assert!(a.merge(&c).is_err());
    }

    #[test]
    fn cdf_is_clamped_and_monotone() {
        let mut a = acc(&[0.0, 1.0, 2.0]);
        let vals = [0.5, -1.0, 1.5, 0.2];
        for (i, v) in vals.iter().enumerate() {
            a.accumulate(i + 1, &[*v]).unwrap();
        }
        let c = a.to_cdf(0).unwrap();
        assert!(c.f.iter().all(|&f| (0.0..=1.0).contains(&f)));
        assert!(c.f.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn cesaro_single_and_pair() {
        let mut a = acc(&[0.0, 1.0]);
        let mut b = acc(&[0.0, 1.0]);
        for n in 1..=6 {
            a.accumulate(n, &[if n % 2 == 0 { 0.5 } else { -0.5 }]).unwrap();
            b.accumulate(n, &[if n < 3 { 2.0 } else { 0.7 }]).unwrap();
        }
        for xi in 0..2 {
            let single = cesaro_probability(std::slice::from_ref(&a), 0, xi).unwrap();
            assert!((single - a.query(0, xi).unwrap()).abs() < 1e-15);
            let pair = cesaro_probability(&[a.clone(), b.clone()], 0, xi).unwrap();
            let mean = 0.5 * (a.query(0, xi).unwrap() + b.query(0, xi).unwrap());
            assert!((pair - mean).abs() < 1e-15);
        }
        let mut short = acc(&[0.0, 1.0]);
        short.accumulate(1, &[0.0]).unwrap();
        assert!(cesaro_probability(&[a, short], 0, 0).is_err());
    }

    #[test]
    fn csv_layout() {
        let mut a = LogAvgAccumulator::new(vec![0.0, 1.0], vec![0.5, 1.0]).unwrap();
        a.accumulate(1, &[0.5, -1.0]).unwrap();
        let mut buf = Vec::new();
        a.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "t,x,logavg_value,N,weights\n0.5,0,0,1,1\n0.5,1,1,1,1\n1,0,1,1,1\n1,1,1,1,1\n"
        );
    }
}
