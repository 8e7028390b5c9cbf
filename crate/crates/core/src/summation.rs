//! Compensated (Neumaier) summation.
//!
//! The trajectory prefixes and the logarithmic-average masses add up to 10^6
//! terms of mixed sign; plain accumulation loses several digits there.

use std::iter::Sum;
use std::ops::{Add, AddAssign};

/// Running sum with a Neumaier error term.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub const ZERO: Self = Self { sum: 0.0, comp: 0.0 };

    pub fn new(value: f64) -> Self {
        Self {
            sum: value,
            comp: 0.0,
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }
}

impl AddAssign<f64> for NeumaierSum {
    #[inline]
    fn add_assign(&mut self, rhs: f64) {
        NeumaierSum::add(self, rhs);
    }
}

impl AddAssign for NeumaierSum {
    fn add_assign(&mut self, rhs: Self) {
        NeumaierSum::add(self, rhs.sum);
        self.comp += rhs.comp;
    }
}

impl Add for NeumaierSum {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl Sum<f64> for NeumaierSum {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::ZERO;
        for x in iter {
            acc += x;
        }
        acc
    }
}

/// Compensated sum of an iterator of floats.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().sum::<NeumaierSum>().value()
}
