//! Trajectory functionals of the partial sums `S_k = Y_1 + ... + Y_k`:
//!
//! * `s_n(t) = (1/d_n) Σ_{k ≤ ⌊nt⌋} (S_k/k − μ)`
//! * `π_n(t) = (Π_{k ≤ ⌊nt⌋} S_k/(μk))^(μ/a_n)`
//!
//! Two compensated prefix arrays make each `(n, t)` query O(1).

use crate::error::{invalid, Error, Result};
use crate::levy_oracle::grid_index;
use crate::summation::NeumaierSum;

/// Inputs `Y_1..Y_N` with their prefix sums.
///
/// Arrays are stored with a leading zero so index `k` means "first `k`
/// terms".
#[derive(Clone, Debug)]
pub struct Trajectory {
    y: Vec<f64>,
    mu: f64,
    prefix_s: Vec<f64>,
    prefix_p: Vec<f64>,
    /// `Σ_{k ≤ m} ln(S_k/(μk))`; empty when `μ <= 0`.
    prefix_log: Vec<f64>,
}

impl Trajectory {
    /// Builds the prefix arrays. Every `y` must be strictly positive.
    pub fn new(y: Vec<f64>, mu: f64) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::Empty("trajectory needs at least one input"));
        }
        if !mu.is_finite() {
            return Err(invalid("mu", mu, "must be finite"));
        }
        if let Some((index, &value)) = y.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
            return Err(Error::NonPositiveInput { index, value });
        }
        let n = y.len();
        let mut prefix_s = Vec::with_capacity(n + 1);
        let mut prefix_p = Vec::with_capacity(n + 1);
        let with_log = mu > 0.0;
        let mut prefix_log = Vec::with_capacity(if with_log { n + 1 } else { 0 });
        prefix_s.push(0.0);
        prefix_p.push(0.0);
        if with_log {
            prefix_log.push(0.0);
        }
        let mut s = 0.0;
        let mut p = NeumaierSum::ZERO;
        let mut l = NeumaierSum::ZERO;
        for (i, &yk) in y.iter().enumerate() {
            let k = (i + 1) as f64;
            s += yk;
            prefix_s.push(s);
            p += s / k - mu;
            prefix_p.push(p.value());
            if with_log {
                l += (s / (mu * k)).ln();
                prefix_log.push(l.value());
            }
        }
        Ok(Self {
            y,
            mu,
            prefix_s,
            prefix_p,
            prefix_log,
        })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn inputs(&self) -> &[f64] {
        &self.y
    }

    /// `S_k`, with `S_0 = 0`.
    pub fn partial_sum(&self, k: usize) -> f64 {
        self.prefix_s[k]
    }

    /// `P_m = Σ_{k ≤ m} (S_k/k − μ)`, with `P_0 = 0`.
    pub fn centered_prefix(&self, m: usize) -> f64 {
        self.prefix_p[m]
    }

    /// `Λ_m = Σ_{k ≤ m} ln(S_k/(μk))`, with `Λ_0 = 0`.
    pub fn log_prefix(&self, m: usize) -> Result<f64> {
        if self.prefix_log.is_empty() {
            return Err(invalid("mu", self.mu, "log-products need mu > 0"));
        }
        Ok(self.prefix_log[m])
    }

    /// `S_1..S_N`.
    pub fn partial_sums(&self) -> &[f64] {
        &self.prefix_s[1..]
    }

    /// `P_1..P_N`.
    pub fn centered_prefixes(&self) -> &[f64] {
        &self.prefix_p[1..]
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.len() {
            return Err(Error::OutOfRange {
                what: "n",
                value: n,
                lo: 1,
                hi: self.len(),
            });
        }
        Ok(())
    }

    fn upper(&self, n: usize, t: f64) -> Result<usize> {
        self.check_n(n)?;
        if !(0.0..=1.0).contains(&t) {
            return Err(invalid("t", t, "must lie in [0, 1]"));
        }
        Ok(grid_index(t, n))
    }

    /// `s_n(t)` with norming `d_n`.
    pub fn s_value(&self, d_n: f64, n: usize, t: f64) -> Result<f64> {
        check_norm(d_n)?;
        let k = self.upper(n, t)?;
        Ok(self.prefix_p[k] / d_n)
    }

    /// `(μ/a_n) Λ_{⌊nt⌋}`, the logarithm of `π_n(t)`.
    pub fn log_pi_value(&self, a_n: f64, n: usize, t: f64) -> Result<f64> {
        check_norm(a_n)?;
        let k = self.upper(n, t)?;
        Ok(self.mu / a_n * self.log_prefix(k)?)
    }

    /// `π_n(t)`; equals 1 when `⌊nt⌋ = 0`.
    pub fn pi_value(&self, a_n: f64, n: usize, t: f64) -> Result<f64> {
        Ok(self.log_pi_value(a_n, n, t)?.exp())
    }

    /// `Σ_{k ≤ n} b_{k,n} (Y_k − μ)` with `b_{k,n} = Σ_{j=k}^n 1/j`.
    ///
    /// Computed independently of the prefix arrays; equals `P_n`.
    pub fn weighted_representation(&self, n: usize) -> Result<f64> {
        self.check_n(n)?;
        let mut b = NeumaierSum::ZERO;
        let mut acc = NeumaierSum::ZERO;
        for k in (1..=n).rev() {
            b += 1.0 / k as f64;
            acc += b.value() * (self.y[k - 1] - self.mu);
        }
        Ok(acc.value())
    }

    /// `|(μ/a_n) Λ_{⌊nt⌋} − (1/a_n) P_{⌊nt⌋}|`.
    pub fn lemma1_discrepancy(&self, a_n: f64, n: usize, t: f64) -> Result<f64> {
        check_norm(a_n)?;
        let k = self.upper(n, t)?;
        let log_part = self.mu * self.log_prefix(k)?;
        Ok((log_part - self.prefix_p[k]).abs() / a_n)
    }
}

fn check_norm(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(invalid("norming", a, "must be positive and finite"))
    }
}

pub fn build_trajectory(y: Vec<f64>, mu: f64) -> Result<Trajectory> {
    Trajectory::new(y, mu)
}

/// `b_{k,n} = Σ_{j=k}^n 1/j`.
pub fn harmonic_weight(k: usize, n: usize) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            lo: 1,
            hi: n,
        });
    }
    let mut acc = NeumaierSum::ZERO;
    for j in (k..=n).rev() {
        acc += 1.0 / j as f64;
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    #[test]
    fn small_hand_example() {
        let tr = Trajectory::new(vec![2.0, 4.0], 3.0).unwrap();
        assert_eq!(tr.partial_sums(), &[2.0, 6.0]);
        // (2/1 − 3) = −1, (6/2 − 3) = 0.
        assert_eq!(tr.centered_prefixes(), &[-1.0, -1.0]);
        assert_eq!(tr.s_value(1.0, 2, 1.0).unwrap(), -1.0);
        assert_eq!(tr.weighted_representation(2).unwrap(), -1.0);
        // ((2/3)·(6/6))^3 = 8/27.
        let pi = tr.pi_value(1.0, 2, 1.0).unwrap();
        assert!(rel(pi, 8.0 / 27.0) < 1e-14, "{pi}");
    }

    #[test]
    fn constant_at_mean_vanishes() {
        let mu = 1.7;
        let tr = Trajectory::new(vec![mu; 64], mu).unwrap();
        for m in 0..=64 {
            assert!(tr.centered_prefix(m).abs() < 1e-12);
        }
        for n in [1, 7, 64] {
            for t in [0.0, 0.3, 1.0] {
                assert!(tr.s_value(1.0, n, t).unwrap().abs() < 1e-12);
                assert!((tr.pi_value(1.0, n, t).unwrap() - 1.0).abs() < 1e-12);
                assert!(tr.lemma1_discrepancy(1.0, n, t).unwrap() < 1e-12);
            }
            assert!(tr.weighted_representation(n).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn single_element_with_zero_mean() {
        let tr = Trajectory::new(vec![1.0], 0.0).unwrap();
        assert_eq!(tr.centered_prefixes(), &[1.0]);
        assert!(tr.pi_value(1.0, 1, 1.0).is_err());
    }

    #[test]
    fn rejects_nonpositive_inputs() {
        assert!(matches!(
            Trajectory::new(vec![1.0, 0.0], 1.0),
            Err(Error::NonPositiveInput { index: 1, .. })
        ));
        assert!(Trajectory::new(vec![1.0, -2.0], 1.0).is_err());
        assert!(Trajectory::new(vec![f64::NAN], 1.0).is_err());
        assert!(Trajectory::new(vec![], 1.0).is_err());
    }

    #[test]
    fn empty_sum_conventions() {
        let tr = Trajectory::new(vec![0.5, 2.5, 1.0], 1.0).unwrap();
        assert_eq!(tr.s_value(2.0, 3, 0.0).unwrap(), 0.0);
        assert_eq!(tr.pi_value(2.0, 3, 0.0).unwrap(), 1.0);
        assert_eq!(tr.lemma1_discrepancy(2.0, 3, 0.0).unwrap(), 0.0);
        // ⌊3 · 0.3⌋ = 0
        assert_eq!(tr.pi_value(2.0, 3, 0.3).unwrap(), 1.0);
    }

    #[test]
    fn query_range_errors() {
        let tr = Trajectory::new(vec![1.0, 2.0], 1.0).unwrap();
        assert!(tr.s_value(1.0, 0, 0.5).is_err());
        assert!(tr.s_value(1.0, 3, 0.5).is_err());
        assert!(tr.s_value(1.0, 2, 1.1).is_err());
        assert!(tr.s_value(0.0, 2, 0.5).is_err());
        assert!(tr.weighted_representation(3).is_err());
    }

    #[test]
    fn harmonic_weights() {
        assert_eq!(harmonic_weight(1, 1).unwrap(), 1.0);
        let direct = 1.0 / 2.0 + 1.0 / 3.0 + 1.0 / 4.0;
        assert!((harmonic_weight(2, 4).unwrap() - direct).abs() < 1e-15);
        assert!((harmonic_weight(2, 4).unwrap() - 13.0 / 12.0).abs() < 1e-15);
        for n in [1, 5, 1000] {
            assert_eq!(harmonic_weight(n, n).unwrap(), 1.0 / n as f64);
        }
        assert!(harmonic_weight(5, 4).is_err());
        assert!(harmonic_weight(0, 4).is_err());
    }

    #[test]
    fn weighted_representation_uses_harmonic_weights() {
        let y = [0.3, 1.9, 0.7, 2.2, 1.1];
        let mu = 1.2;
        let tr = Trajectory::new(y.to_vec(), mu).unwrap();
        let n = y.len();
        let via_weights: f64 = (1..=n)
            .map(|k| harmonic_weight(k, n).unwrap() * (y[k - 1] - mu))
            .sum();
        assert!(rel(tr.weighted_representation(n).unwrap(), via_weights) < 1e-13);
        assert!(rel(tr.centered_prefix(n), via_weights) < 1e-13);
    }

    #[test]
    fn step_function_in_t() {
        let tr = Trajectory::new(vec![0.5, 2.0, 1.5, 0.2, 3.0], 1.0).unwrap();
        let n = 5;
        for k in 0..n {
            let lo = tr.s_value(1.0, n, k as f64 / n as f64).unwrap();
            let mid = tr.s_value(1.0, n, (k as f64 + 0.5) / n as f64).unwrap();
            assert_eq!(lo, mid);
        }
    }
}
