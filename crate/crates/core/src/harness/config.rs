use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::stable::{InputLaw, NormingSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scenario {
    /// Almost-sure limit of the product functional.
    #[serde(rename = "ascl")]
    AsclProduct,
    /// Path-wise versus averaged-probability log averages.
    #[serde(rename = "equiv")]
    Equivalence,
    /// Distributional limit of `s_n(t)`.
    #[serde(rename = "weak-limit")]
    WeakLimit,
    /// Growth and moment conditions on the norming sequence.
    #[serde(rename = "conditions")]
    Conditions,
    /// Path-integrated oracle versus the closed-form identity.
    #[serde(rename = "oracle")]
    OracleIdentity,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::AsclProduct,
        Scenario::Equivalence,
        Scenario::WeakLimit,
        Scenario::Conditions,
        Scenario::OracleIdentity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::AsclProduct => "ascl",
            Scenario::Equivalence => "equiv",
            Scenario::WeakLimit => "weak-limit",
            Scenario::Conditions => "conditions",
            Scenario::OracleIdentity => "oracle",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown scenario `{s}`")))
    }
}

/// Experiment configuration, read from a TOML document.
///
/// Every key is optional and defaults to the acceptance-scale value for the
/// scenario; unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub input_law: InputLaw,
    /// Limit index; derived from the input law when absent.
    pub alpha: Option<f64>,
    /// Overrides the law's default norming sequence `a_n` (= `d_n`).
    pub norming: Option<NormingSequence>,
    /// Trajectory length `N`.
    pub n: usize,
    /// Replications `R` (seeds for `ascl`, trajectories for `weak-limit`,
    /// Monte Carlo draws per grid point for `conditions`).
    pub replications: usize,
    pub seed: u64,
    pub t_grid: Vec<f64>,
    pub x_points: usize,
    /// Oracle quantile range spanned by the x grid.
    pub x_quantiles: [f64; 2],
    /// Extra `N` values at which `ascl` snapshots its estimate.
    pub checkpoints: Vec<usize>,
    pub gamma: f64,
    pub gamma_prime: f64,
    pub epsilon: f64,
    pub n0: usize,
    pub moment_grid_points: usize,
    pub growth_grid_points: usize,
    /// Oracle sample size `M`.
    pub oracle_samples: usize,
    /// Oracle path grid size `m`.
    pub oracle_steps: usize,
    /// Indices checked by the `oracle` scenario.
    pub alphas: Vec<f64>,
    /// Output directory; not part of the config hash.
    #[serde(skip_serializing)]
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::for_scenario(Scenario::AsclProduct)
    }
}

const DEFAULT_T_GRID: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

impl ExperimentConfig {
    /// Acceptance-scale defaults for `scenario`.
    pub fn for_scenario(scenario: Scenario) -> Self {
        let base = ExperimentConfig {
            scenario,
            input_law: InputLaw::ShiftedExponential {
                rate: 1.0,
                shift: 0.0,
            },
            alpha: None,
            norming: None,
            n: 100_000,
            replications: 50,
            seed: 20_090_507,
            t_grid: DEFAULT_T_GRID.to_vec(),
            x_points: 201,
            x_quantiles: [0.005, 0.995],
            checkpoints: Vec::new(),
            gamma: 0.5,
            gamma_prime: 0.25,
            epsilon: 0.5,
            n0: 1,
            moment_grid_points: 11,
            growth_grid_points: 20,
            oracle_samples: 10_000,
            oracle_steps: 10_000,
            alphas: vec![1.2, 1.5, 1.8, 2.0],
            output: None,
        };
        match scenario {
            Scenario::AsclProduct => ExperimentConfig {
                input_law: InputLaw::Lognormal {
                    log_mean: 0.0,
                    log_sd: 1.0,
                },
                n: 1_000_000,
                replications: 20,
                checkpoints: vec![1_000],
                ..base
            },
            Scenario::Equivalence => base,
            Scenario::WeakLimit => ExperimentConfig {
                n: 10_000,
                replications: 10_000,
                ..base
            },
            Scenario::Conditions => ExperimentConfig {
                replications: 1_000,
                ..base
            },
            Scenario::OracleIdentity => base,
        }
    }

    /// Parses a TOML document. Missing keys take the defaults of the
    /// document's `scenario` (or of `fallback` when it names none).
    pub fn from_toml_str(text: &str, fallback: Scenario) -> Result<Self> {
        let table: toml::Table = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let scenario = match table.get("scenario") {
            Some(v) => v
                .as_str()
                .ok_or_else(|| Error::Config("`scenario` must be a string".into()))?
                .parse()?,
            None => fallback,
        };
        let mut merged = toml::Table::try_from(Self::for_scenario(scenario))
            .map_err(|e| Error::Config(e.to_string()))?;
        // Keys present in the document win; absent optional keys stay unset.
        for (k, v) in table {
            merged.insert(k, v);
        }
        let cfg: ExperimentConfig = merged
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path, fallback: Scenario) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text, fallback).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Limit index: explicit `alpha`, else the law's.
    pub fn limit_alpha(&self) -> f64 {
        self.alpha.unwrap_or_else(|| self.input_law.limit_alpha())
    }

    pub fn norming_sequence(&self) -> Result<NormingSequence> {
        match self.norming {
            Some(seq) => {
                seq.validate()?;
                Ok(seq)
            }
            None => self.input_law.norming(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        self.input_law.validate()?;
        if let Some(seq) = &self.norming {
            seq.validate()?;
        }
        let law_alpha = self.input_law.limit_alpha();
        if let Some(a) = self.alpha {
            if !(a > 1.0 && a <= 2.0) {
                return bad(format!("alpha = {a} must lie in (1, 2]"));
            }
            if !matches!(self.input_law, InputLaw::Degenerate { .. }) && a != law_alpha {
                return bad(format!(
                    "alpha = {a} disagrees with the input law's limit index {law_alpha}"
                ));
            }
        }
        if self.n == 0 {
            return bad("n must be >= 1".into());
        }
        if self.replications == 0 {
            return bad("replications must be >= 1".into());
        }
        if self.t_grid.is_empty()
            || self.t_grid.iter().any(|&t| !(t > 0.0 && t <= 1.0))
            || self.t_grid.windows(2).any(|w| w[0] >= w[1])
        {
            return bad(format!(
                "t_grid {:?} must be strictly increasing within (0, 1]",
                self.t_grid
            ));
        }
        if self.x_points < 2 {
            return bad("x_points must be >= 2".into());
        }
        let [lo, hi] = self.x_quantiles;
        if !(0.0 <= lo && lo < hi && hi <= 1.0) {
            return bad(format!("x_quantiles [{lo}, {hi}] must satisfy 0 <= lo < hi <= 1"));
        }
        if let Some(&c) = self.checkpoints.iter().find(|&&c| c == 0 || c >= self.n) {
            return bad(format!("checkpoint {c} must lie in [1, n)"));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return bad(format!("gamma = {} must be positive", self.gamma));
        }
        if !(self.gamma_prime > 0.0 && self.gamma_prime < self.gamma) {
            return bad(format!(
                "gamma_prime = {} must lie in (0, gamma = {})",
                self.gamma_prime, self.gamma
            ));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon = {} must lie in (0, 1)", self.epsilon));
        }
        if self.n0 == 0 || self.n0 > self.n {
            return bad(format!("n0 = {} must satisfy 1 <= n0 <= n = {}", self.n0, self.n));
        }
        if self.moment_grid_points == 0 || self.growth_grid_points < 2 {
            return bad("moment_grid_points must be >= 1 and growth_grid_points >= 2".into());
        }
        if self.oracle_samples == 0 {
            return bad("oracle_samples must be >= 1".into());
        }
        if self.oracle_steps < 2 {
            return bad("oracle_steps must be >= 2".into());
        }
        if self.alphas.is_empty() || self.alphas.iter().any(|&a| !(a > 1.0 && a <= 2.0)) {
            return bad(format!("alphas {:?} must be nonempty within (1, 2]", self.alphas));
        }
        let alpha = self.limit_alpha();
        if !(alpha > 1.0 && alpha <= 2.0) {
            return bad(format!("limit index {alpha} must lie in (1, 2]"));
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON encoding (output path excluded).
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}
