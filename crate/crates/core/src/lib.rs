//! Hazard-potential reliability models.
//!
//! An item is endowed with an unknown unit-exponential resource `X` and fails
//! once its cumulative hazard `H(t)` exceeds it. The modules cover
//!
//! * [`distcore`]: Gaussian and inverse Gaussian first-passage laws, and the
//!   lifetime law of a Wiener maximum process meeting an exponential threshold;
//! * [`riskmodels`]: closed-form competing-risk survival functions;
//! * [`pathsim`]: reproducible Monte Carlo for Wiener, gamma and correlated
//!   Brownian paths, with hitting-time and trauma estimators;
//! * [`inference`]: grid posterior for marker drift and diffusion, the
//!   threshold posterior, predictive and residual-life survival.
//!
//! Everything numeric is generic over [`Real`] (`f32`, `f64`). The
//! unparameterised aliases re-exported here fix the scalar to `f64`.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distcore;
pub mod error;
pub mod inference;
pub mod pathsim;
mod real;
pub mod riskmodels;

pub use error::{Error, Result};
pub use real::{log_sum_exp, Real};

pub type WienerParams = distcore::WienerParams<f64>;
pub type IgParams = distcore::IgParams<f64>;
pub type Quadrature = distcore::Quadrature<f64>;
pub type HazardCurve = riskmodels::HazardCurve<f64>;
pub type GumbelTheta = riskmodels::GumbelTheta<f64>;
pub type PathConfig = pathsim::PathConfig<f64>;
pub type SamplePath = pathsim::SamplePath<f64>;
pub type CorrelationRho = pathsim::CorrelationRho<f64>;
pub type McEstimate = pathsim::McEstimate<f64>;
pub type MarkerSeries = inference::MarkerSeries<f64>;
pub type PriorConfig = inference::PriorConfig<f64>;
pub type PosteriorGrid = inference::PosteriorGrid<f64>;
pub type ThresholdPosterior = inference::ThresholdPosterior<f64>;

pub type WienerParamsF32 = distcore::WienerParams<f32>;
pub type QuadratureF32 = distcore::Quadrature<f32>;
pub type PathConfigF32 = pathsim::PathConfig<f32>;
pub type MarkerSeriesF32 = inference::MarkerSeries<f32>;
