//! Posterior file and run manifest.
//!
//! The posterior file is a JSON document:
//!
//! ```text
//! {
//!   "format": "hazpot-posterior", "version": 1,
//!   "prior": { "a", "b", "beta_p", "beta_q", "delta", "mode" },
//!   "data": { "observations", "last_time", "last_value", "max_value" },
//!   "threshold": { "rule": "last-value" | "running-max", "shift" },
//!   "grid": { "eta_nodes", "eta_widths", "sigma2_nodes", "sigma2_widths",
//!             "log_density" },
//!   "summary": { "eta_mean", "sigma2_mean", "eta_mode", "sigma2_mode",
//!                "mle_eta", "mle_sigma2", "shift", "last_time" }
//! }
//! ```
//!
//! `log_density` is row-major in η, normalised so that
//! Σ exp(log_density)·(η width)·(σ² width) = 1; `null` stands for a cell of
//! zero density.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use hazard_core::{PosteriorGrid, ThresholdPosterior};

use crate::error::{CliError, CliResult};

pub const POSTERIOR_FORMAT: &str = "hazpot-posterior";
pub const POSTERIOR_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = concat!("hazpot-", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorBlock {
    pub a: f64,
    pub b: f64,
    pub beta_p: f64,
    pub beta_q: f64,
    pub delta: u32,
    pub mode: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataBlock {
    pub observations: usize,
    pub last_time: f64,
    pub last_value: f64,
    pub max_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdBlock {
    pub rule: String,
    pub shift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridBlock {
    pub eta_nodes: Vec<f64>,
    pub eta_widths: Vec<f64>,
    pub sigma2_nodes: Vec<f64>,
    pub sigma2_widths: Vec<f64>,
    pub log_density: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryBlock {
    pub eta_mean: f64,
    pub sigma2_mean: f64,
    pub eta_mode: f64,
    pub sigma2_mode: f64,
    pub mle_eta: f64,
    pub mle_sigma2: f64,
    pub shift: f64,
    pub last_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorFile {
    pub format: String,
    pub version: u32,
    pub prior: PriorBlock,
    pub data: DataBlock,
    pub threshold: ThresholdBlock,
    pub grid: GridBlock,
    pub summary: SummaryBlock,
}

impl GridBlock {
    pub fn from_grid(g: &PosteriorGrid) -> Self {
        Self {
            eta_nodes: g.eta_nodes().to_vec(),
            eta_widths: g.eta_widths().to_vec(),
            sigma2_nodes: g.sigma2_nodes().to_vec(),
            sigma2_widths: g.sigma2_widths().to_vec(),
            log_density: g
                .log_densities()
                .iter()
                .map(|&v| v.is_finite().then_some(v))
                .collect(),
        }
    }

    pub fn to_grid(&self) -> CliResult<PosteriorGrid> {
        let log_density = self
            .log_density
            .iter()
            .map(|v| v.unwrap_or(f64::NEG_INFINITY))
            .collect();
        PosteriorGrid::from_parts(
            self.eta_nodes.clone(),
            self.eta_widths.clone(),
            self.sigma2_nodes.clone(),
            self.sigma2_widths.clone(),
            log_density,
            true,
        )
        .map_err(|e| CliError::Data(format!("posterior grid: {e}")))
    }
}

impl PosteriorFile {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("posterior serialises");
        s.push('\n');
        s
    }

    pub fn parse(text: &str, what: &str) -> CliResult<Self> {
        let file: Self = serde_json::from_str(text)
            .map_err(|e| CliError::Data(format!("{what} is not a posterior file: {e}")))?;
        if file.format != POSTERIOR_FORMAT || file.version != POSTERIOR_VERSION {
            return Err(CliError::Data(format!(
                "{what}: unsupported format {} version {}",
                file.format, file.version
            )));
        }
        if !(file.data.last_time > 0.0 && file.data.last_time.is_finite()) {
            return Err(CliError::Data(format!(
                "{what}: last_time must be positive"
            )));
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("cannot read {}", path.display()), e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn threshold(&self) -> CliResult<ThresholdPosterior> {
        ThresholdPosterior::new(self.threshold.shift)
            .map_err(|e| CliError::Data(format!("posterior threshold: {e}")))
    }
}

/// Sidecar describing how an output file was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
    pub artifact_version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, serde_json::Value>, seed: u64) -> Self {
        Self {
            command: command.to_owned(),
            parameters,
            seed,
            artifact_version: ARTIFACT_VERSION.to_owned(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
        }
    }

    pub fn sidecar_path(out: &Path) -> PathBuf {
        let mut name = out.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serialises");
        s.push('\n');
        s
    }
}
