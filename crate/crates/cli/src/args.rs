//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

/// JSON has no infinities; write them as text.
fn number_or_text<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&v.to_string())
    }
}

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "hazpot",
    version,
    about = "Hazard-potential reliability models"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags accepted by every command.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Master seed for Monte Carlo substreams
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of simulated paths
    #[arg(long, global = true, default_value_t = 10_000)]
    pub paths: usize,
    /// Simulation time step
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub dt: f64,
    /// Output file (stdout when absent); a `<out>.manifest.json` sidecar is written next to it
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress the summary printed to stderr
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Worker threads (does not change results)
    #[arg(long, global = true)]
    #[serde(skip)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Closed-form survival curve
    Survival(SurvivalArgs),
    /// Monte Carlo paths or survival estimates
    Simulate(SimulateArgs),
    /// Grid posterior of drift and variance from marker data
    Fit(FitArgs),
    /// Residual-life survival from a posterior file
    Predict(PredictArgs),
    /// First-passage CDFs for thresholds 1..5 and their exponential mixture
    Figure1(Figure1Args),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Survival(_) => "survival",
            Command::Simulate(_) => "simulate",
            Command::Fit(_) => "fit",
            Command::Predict(_) => "predict",
            Command::Figure1(_) => "figure1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurvivalModel {
    Additive,
    Gumbel,
    Maxrule,
    Bounds,
    TraumaClosed,
    Ig,
    Mixture,
}

#[derive(Debug, Args, Serialize)]
pub struct SurvivalArgs {
    #[arg(long, value_enum)]
    pub model: SurvivalModel,
    /// Cumulative hazard, `power:c,p` for c·t^p or `table:<csv>` with header `t,H`; repeatable
    #[arg(long = "hazard")]
    pub hazards: Vec<String>,
    /// Gumbel dependence parameter in [0, 1]
    #[arg(long)]
    pub theta: Option<f64>,
    /// Fixed threshold for the inverse Gaussian model
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma2: f64,
    /// Time grid: `start:stop:step` or a comma-separated list
    #[arg(long)]
    pub t: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Process {
    /// Marker paths Z(t)
    Wiener,
    /// Running maxima max(0, sup Z)
    Wienermax,
    /// Standard gamma process paths
    Gamma,
    /// Pairs of correlated standard Brownian paths
    CorrBm,
    /// Trauma survival driven by a gamma process
    Trauma,
    /// Two correlated Brownian maxima sharing one exponential threshold
    Competing,
    /// Survival to a fixed threshold `--x`
    IgHitting,
    /// Survival to an exponential threshold
    ExpHitting,
}

impl Process {
    pub fn is_path_dump(self) -> bool {
        matches!(
            self,
            Process::Wiener | Process::Wienermax | Process::Gamma | Process::CorrBm
        )
    }
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub process: Process,
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma2: f64,
    /// Increment correlation for corr-bm and competing
    #[arg(long, default_value_t = 0.0)]
    pub rho: f64,
    /// Fixed threshold for ig-hitting
    #[arg(long)]
    pub x: Option<f64>,
    /// Degradation threshold for trauma (`inf` for none)
    #[arg(long, default_value_t = f64::INFINITY)]
    #[serde(serialize_with = "number_or_text")]
    pub threshold: f64,
    /// Evaluation times for estimators: `start:stop:step` or a comma list
    #[arg(long)]
    pub t: Option<String>,
    /// Path length for path dumps
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Explicit number of time steps per path
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PriorChoice {
    Informative,
    /// Flat in (η, σ²); for checking the grid against the likelihood
    Flat,
}

#[derive(Debug, Args, Serialize)]
pub struct FitArgs {
    /// Marker CSV with header `time,value`
    pub markers: PathBuf,
    /// Lower end of the prior angle range for arctan(η)
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_8)]
    pub a: f64,
    /// Upper end of the prior angle range for arctan(η)
    #[arg(long, default_value_t = 3.0 * std::f64::consts::FRAC_PI_8)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta_p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta_q: f64,
    /// Prior signal-to-noise ratio η/σ
    #[arg(long, default_value_t = 3)]
    pub delta: u32,
    #[arg(long, default_value_t = 64)]
    pub n_eta: usize,
    #[arg(long, default_value_t = 64)]
    pub n_sigma2: usize,
    /// Lower σ² grid bound (default: MLE / 100)
    #[arg(long)]
    pub sigma2_min: Option<f64>,
    /// Upper σ² grid bound (default: MLE · 100)
    #[arg(long)]
    pub sigma2_max: Option<f64>,
    #[arg(long, value_enum, default_value_t = PriorChoice::Informative)]
    pub prior: PriorChoice,
    /// Bound the threshold by the largest observed marker instead of the last
    #[arg(long)]
    pub use_max_shift: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct PredictArgs {
    /// Posterior file written by `fit`
    pub posterior: PathBuf,
    /// Residual times: `start:stop:step` or a comma list; 0 is always emitted first
    #[arg(long, default_value = "0:5:0.25")]
    pub u: String,
}

#[derive(Debug, Args, Serialize)]
pub struct Figure1Args {
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub t_step: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma2: f64,
}
