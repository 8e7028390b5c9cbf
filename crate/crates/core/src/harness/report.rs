use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::harness::config::{ExperimentConfig, Scenario};
use crate::harness::experiments::{
    AsclReport, ConditionsReport, EquivalenceReport, OracleIdentityReport, WeakLimitReport,
};

/// One pass/fail check with its raw value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gate {
    pub name: String,
    pub value: f64,
    /// `"<="`, `"<"` or `">="`.
    pub comparison: &'static str,
    pub threshold: f64,
    pub pass: bool,
}

impl Gate {
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            comparison: "<=",
            threshold,
            pass: value <= threshold,
        }
    }

    pub fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            comparison: "<",
            threshold,
            pass: value < threshold,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            comparison: ">=",
            threshold,
            pass: value >= threshold,
        }
    }
}

/// Seeds and grids a run used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub config_hash: String,
    pub base_seed: u64,
    /// Replication `r` draws from stream `r` of `base_seed`; half-open range.
    pub replication_streams: [u64; 2],
    /// Streams reserved for oracle sampling.
    pub oracle_streams: Vec<u64>,
    pub t_grid: Vec<f64>,
    pub x_grid: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ScenarioResult {
    Ascl(AsclReport),
    Equivalence(EquivalenceReport),
    WeakLimit(WeakLimitReport),
    Conditions(ConditionsReport),
    OracleIdentity(OracleIdentityReport),
}

impl ScenarioResult {
    pub fn gates(&self) -> &[Gate] {
        match self {
            ScenarioResult::Ascl(r) => &r.gates,
            ScenarioResult::Equivalence(r) => &r.gates,
            ScenarioResult::WeakLimit(r) => &r.gates,
            ScenarioResult::Conditions(r) => &r.gates,
            ScenarioResult::OracleIdentity(r) => &r.gates,
        }
    }
}

/// Everything written to `report.json`.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub scenario: Scenario,
    pub all_pass: bool,
    pub gates: Vec<Gate>,
    pub provenance: Provenance,
    pub config: ExperimentConfig,
    pub result: ScenarioResult,
}

impl RunReport {
    pub fn new(config: &ExperimentConfig, provenance: Provenance, result: ScenarioResult) -> Self {
        let gates = result.gates().to_vec();
        Self {
            scenario: config.scenario,
            all_pass: gates.iter().all(|g| g.pass),
            gates,
            provenance,
            config: config.clone(),
            result,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Writes `report.json` plus the scenario's CSV tables into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), self.to_json()?)?;
        match &self.result {
            ScenarioResult::Ascl(r) => r.write_tables(dir),
            ScenarioResult::Equivalence(r) => r.write_tables(dir),
            ScenarioResult::WeakLimit(r) => r.write_tables(dir),
            ScenarioResult::Conditions(r) => r.write_tables(dir),
            ScenarioResult::OracleIdentity(r) => r.write_tables(dir),
        }
    }

    /// One line per gate.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            out.push_str(&format!(
                "{} {}: {:.6} {} {}\n",
                if g.pass { "PASS" } else { "FAIL" },
                g.name,
                g.value,
                g.comparison,
                g.threshold
            ));
        }
        out
    }
}

pub(crate) fn csv_file(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

pub(crate) fn finish(mut w: BufWriter<File>) -> Result<()> {
    w.flush()?;
    Ok(())
}
