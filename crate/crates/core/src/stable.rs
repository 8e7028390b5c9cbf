//! Stable laws, their characteristic functions and samplers, and the catalog
//! of positive input laws together with their norming sequences.
//!
//! Characteristic functions use the three canonical forms
//!
//! ```text
//! alpha = 2:           phi(t) = exp(-t^2 / 2)
//! alpha != 1, 2:       phi(t) = exp(-|t|^a (1 - i b sgn(t) tan(pi a / 2)))
//! alpha = 1:           phi(t) = exp(-|t| (1 + i b sgn(t) (2/pi) ln|t|))
//! ```
//!
//! so the Gaussian member has unit variance. A scale `s` and location `m`
//! act as `exp(i m t) * phi(s t)`, the characteristic function of `s X + m`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp, Exp1, LogNormal, Open01, Pareto, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Which characteristic-function form a parameter set selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfForm {
    /// `alpha = 2`, standard normal.
    Normal,
    /// `alpha` in `(0, 1) ∪ (1, 2)`.
    General,
    /// `alpha = 1`.
    Cauchy,
}

/// Index, skewness, scale and location of a stable law.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StableParams {
    alpha: f64,
    beta: f64,
    scale: f64,
    location: f64,
}

impl StableParams {
    /// Unit-scale, zero-location law with index `alpha` and skewness `beta`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(invalid("alpha", alpha, "must lie in (0, 2]"));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(invalid("beta", beta, "must lie in [-1, 1]"));
        }
        Ok(Self {
            alpha,
            beta,
            scale: 1.0,
            location: 0.0,
        })
    }

    pub fn with_scale(mut self, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(invalid("scale", scale, "must be positive and finite"));
        }
        self.scale = scale;
        Ok(self)
    }

    pub fn with_location(mut self, location: f64) -> Result<Self> {
        if !location.is_finite() {
            return Err(invalid("location", location, "must be finite"));
        }
        self.location = location;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    pub fn form(&self) -> CfForm {
        if self.alpha == 2.0 {
            CfForm::Normal
        } else if self.alpha == 1.0 {
            CfForm::Cauchy
        } else {
            CfForm::General
        }
    }

    /// Characteristic function `E exp(i t X)`.
    pub fn cf(&self, t: f64) -> Complex64 {
        let u = self.scale * t;
        let exponent = match self.form() {
            CfForm::Normal => Complex64::new(-0.5 * u * u, 0.0),
            CfForm::General => {
                let mag = u.abs().powf(self.alpha);
                let skew = self.beta * sign(u) * (FRAC_PI_2 * self.alpha).tan();
                -mag * Complex64::new(1.0, -skew)
            }
            CfForm::Cauchy => {
                let a = u.abs();
                if a == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    // Genuine natural log here, not the truncated one used
                    // for averaging denominators.
                    let skew = self.beta * sign(u) * (2.0 / PI) * a.ln();
                    -a * Complex64::new(1.0, skew)
                }
            }
        };
        (exponent + Complex64::new(0.0, self.location * t)).exp()
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Characteristic function of the stable law `params` at `t`.
pub fn stable_cf(params: &StableParams, t: f64) -> Complex64 {
    params.cf(t)
}

/// Stable variate generator (Chambers-Mallows-Stuck transform).
///
/// The transform is calibrated to the characteristic-function forms in this
/// module: for `alpha != 1, 2` it produces form (2) at unit scale, for
/// `alpha = 2` a standard normal, and for `alpha = 1, beta = 0` a standard
/// Cauchy variate.
#[derive(Clone, Copy, Debug)]
pub struct Stable {
    params: StableParams,
    shift: f64,
    factor: f64,
}

impl Stable {
    pub fn new(params: StableParams) -> Result<Self> {
        let (shift, factor) = match params.form() {
            CfForm::Normal => (0.0, 1.0),
            CfForm::Cauchy => {
                if params.beta != 0.0 {
                    return Err(Error::Unsupported(
                        "sampling alpha = 1 with nonzero skewness",
                    ));
                }
                (0.0, 1.0)
            }
            CfForm::General => {
                let a = params.alpha;
                let zeta = params.beta * (FRAC_PI_2 * a).tan();
                let shift = zeta.atan() / a;
                let factor = (1.0 + zeta * zeta).powf(0.5 / a);
                (shift, factor)
            }
        };
        Ok(Self {
            params,
            shift,
            factor,
        })
    }

    pub fn params(&self) -> &StableParams {
        &self.params
    }

    /// A variate at unit scale and zero location.
    #[inline]
    pub fn sample_standard<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.params.form() {
            CfForm::Normal => rng.sample(StandardNormal),
            CfForm::Cauchy => {
                let u: f64 = rng.sample(Open01);
                (PI * (u - 0.5)).tan()
            }
            CfForm::General => {
                let a = self.params.alpha;
                let u: f64 = rng.sample(Open01);
                let v = PI * (u - 0.5);
                let w: f64 = rng.sample(Exp1);
                let av = a * (v + self.shift);
                let cos_v = v.cos();
                self.factor * av.sin() / cos_v.powf(1.0 / a)
                    * ((v - av).cos() / w).powf((1.0 - a) / a)
            }
        }
    }
}

impl Distribution<f64> for Stable {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.params.scale * self.sample_standard(rng) + self.params.location
    }
}

/// Draws one variate from `params`.
pub fn sample_stable<R: Rng + ?Sized>(params: &StableParams, rng: &mut R) -> Result<f64> {
    Ok(Stable::new(*params)?.sample(rng))
}

/// Positive i.i.d. input laws with an analytically known mean.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InputLaw {
    /// `shift + Exp(rate)`.
    ShiftedExponential {
        rate: f64,
        #[serde(default)]
        shift: f64,
    },
    /// `exp(N(log_mean, log_sd^2))`.
    Lognormal { log_mean: f64, log_sd: f64 },
    /// Pareto with tail index in `(1, 2)`: finite mean, infinite variance.
    Pareto { alpha: f64, x_min: f64 },
    /// Constant input; every functional is degenerate. Used for plumbing
    /// checks only.
    Degenerate { value: f64 },
}

impl InputLaw {
    pub fn shifted_exponential(rate: f64, shift: f64) -> Result<Self> {
        let law = InputLaw::ShiftedExponential { rate, shift };
        law.validate()?;
        Ok(law)
    }

    pub fn lognormal(log_mean: f64, log_sd: f64) -> Result<Self> {
        let law = InputLaw::Lognormal { log_mean, log_sd };
        law.validate()?;
        Ok(law)
    }

    pub fn pareto(alpha: f64, x_min: f64) -> Result<Self> {
        let law = InputLaw::Pareto { alpha, x_min };
        law.validate()?;
        Ok(law)
    }

    pub fn degenerate(value: f64) -> Result<Self> {
        let law = InputLaw::Degenerate { value };
        law.validate()?;
        Ok(law)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            InputLaw::ShiftedExponential { rate, shift } => {
                if !(rate > 0.0 && rate.is_finite()) {
                    return Err(invalid("rate", rate, "must be positive and finite"));
                }
                if !(shift >= 0.0 && shift.is_finite()) {
                    return Err(invalid("shift", shift, "must be nonnegative and finite"));
                }
            }
            InputLaw::Lognormal { log_mean, log_sd } => {
                if !log_mean.is_finite() {
                    return Err(invalid("log_mean", log_mean, "must be finite"));
                }
                if !(log_sd > 0.0 && log_sd.is_finite()) {
                    return Err(invalid("log_sd", log_sd, "must be positive and finite"));
                }
            }
            InputLaw::Pareto { alpha, x_min } => {
                if !(alpha > 1.0 && alpha < 2.0) {
                    return Err(invalid(
                        "alpha",
                        alpha,
                        "Pareto tail index must lie in (1, 2)",
                    ));
                }
                if !(x_min > 0.0 && x_min.is_finite()) {
                    return Err(invalid("x_min", x_min, "must be positive and finite"));
                }
            }
            InputLaw::Degenerate { value } => {
                if !(value > 0.0 && value.is_finite()) {
                    return Err(invalid("value", value, "must be positive and finite"));
                }
            }
        }
        Ok(())
    }

    /// The mean `mu`.
    pub fn mean(&self) -> f64 {
        match *self {
            InputLaw::ShiftedExponential { rate, shift } => shift + 1.0 / rate,
            InputLaw::Lognormal { log_mean, log_sd } => (log_mean + 0.5 * log_sd * log_sd).exp(),
            InputLaw::Pareto { alpha, x_min } => alpha * x_min / (alpha - 1.0),
            InputLaw::Degenerate { value } => value,
        }
    }

    /// Standard deviation, `None` when the variance is infinite.
    pub fn std_dev(&self) -> Option<f64> {
        match *self {
            InputLaw::ShiftedExponential { rate, .. } => Some(1.0 / rate),
            InputLaw::Lognormal { log_mean, log_sd } => {
                let s2 = log_sd * log_sd;
                Some((s2.exp_m1()).sqrt() * (log_mean + 0.5 * s2).exp())
            }
            InputLaw::Pareto { .. } => None,
            InputLaw::Degenerate { .. } => Some(0.0),
        }
    }

    /// Index of the stable law the partial sums are attracted to.
    pub fn limit_alpha(&self) -> f64 {
        match *self {
            InputLaw::Pareto { alpha, .. } => alpha,
            _ => 2.0,
        }
    }

    /// Default norming sequence: `sigma * sqrt(n)` for finite variance,
    /// `n^(1/alpha)` for Pareto (constant not pinned down in closed form).
    pub fn norming(&self) -> Result<NormingSequence> {
        match *self {
            InputLaw::Pareto { alpha, .. } => NormingSequence::power_law(alpha, 1.0),
            InputLaw::Degenerate { .. } => Err(Error::Unsupported(
                "a degenerate law has no norming sequence; supply one explicitly",
            )),
            _ => NormingSequence::sqrt_n(self.std_dev().expect("finite variance")),
        }
    }

    /// `n` i.i.d. variates.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        let mut out = vec![0.0; n];
        self.fill(&mut out, rng)?;
        Ok(out)
    }

    /// Overwrites `buf` with i.i.d. variates.
    pub fn fill<R: Rng + ?Sized>(&self, buf: &mut [f64], rng: &mut R) -> Result<()> {
        self.validate()?;
        match *self {
            InputLaw::ShiftedExponential { rate, shift } => {
                let exp = Exp::new(rate).expect("validated rate");
                for y in buf.iter_mut() {
                    *y = positive(|| shift + exp.sample(rng));
                }
            }
            InputLaw::Lognormal { log_mean, log_sd } => {
                let ln = LogNormal::new(log_mean, log_sd).expect("validated lognormal");
                for y in buf.iter_mut() {
                    *y = positive(|| ln.sample(rng));
                }
            }
            InputLaw::Pareto { alpha, x_min } => {
                let p = Pareto::new(x_min, alpha).expect("validated pareto");
                for y in buf.iter_mut() {
                    *y = p.sample(rng);
                }
            }
            InputLaw::Degenerate { value } => buf.fill(value),
        }
        Ok(())
    }
}

// Exp(rate) and the lognormal can round to exactly 0.0 with negligible
// probability; redraw so positivity holds unconditionally.
#[inline]
fn positive(mut draw: impl FnMut() -> f64) -> f64 {
    loop {
        let y = draw();
        if y > 0.0 {
            return y;
        }
    }
}

/// Draws `n` i.i.d. variates from `law`.
pub fn sample_input<R: Rng + ?Sized>(law: &InputLaw, n: usize, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Empty("sample_input needs n >= 1"));
    }
    law.sample(n, rng)
}

/// Norming sequence `a_n = n^(1/alpha) * const`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum NormingSequence {
    /// `sigma * sqrt(n)`.
    SqrtN { sigma: f64 },
    /// `c * n^(1/alpha)`.
    PowerLaw { alpha: f64, c: f64 },
}

impl NormingSequence {
    pub fn sqrt_n(sigma: f64) -> Result<Self> {
        let seq = NormingSequence::SqrtN { sigma };
        seq.validate()?;
        Ok(seq)
    }

    pub fn power_law(alpha: f64, c: f64) -> Result<Self> {
        let seq = NormingSequence::PowerLaw { alpha, c };
        seq.validate()?;
        Ok(seq)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            NormingSequence::SqrtN { sigma } => {
                if !(sigma > 0.0 && sigma.is_finite()) {
                    return Err(invalid("sigma", sigma, "must be positive and finite"));
                }
            }
            NormingSequence::PowerLaw { alpha, c } => {
                if !(alpha > 0.0 && alpha <= 2.0) {
                    return Err(invalid("alpha", alpha, "must lie in (0, 2]"));
                }
                if !(c > 0.0 && c.is_finite()) {
                    return Err(invalid("c", c, "must be positive and finite"));
                }
            }
        }
        Ok(())
    }

    /// The exponent `1/alpha` of the power law.
    pub fn exponent(&self) -> f64 {
        match *self {
            NormingSequence::SqrtN { .. } => 0.5,
            NormingSequence::PowerLaw { alpha, .. } => 1.0 / alpha,
        }
    }

    /// `a_n` for `n >= 1`.
    #[inline]
    pub fn value(&self, n: usize) -> f64 {
        debug_assert!(n >= 1);
        let n = n as f64;
        match *self {
            NormingSequence::SqrtN { sigma } => sigma * n.sqrt(),
            NormingSequence::PowerLaw { alpha, c } => c * n.powf(1.0 / alpha),
        }
    }
}

pub fn norming_value(seq: &NormingSequence, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            lo: 1,
            hi: usize::MAX,
        });
    }
    Ok(seq.value(n))
}
