//! Bayesian inference from a discretely observed Wiener marker.
//!
//! The posterior over (η, σ², X) factorises into a grid posterior for the
//! marker parameters and an analytic shifted-exponential posterior for the
//! hazard potential X. Predictive survival averages the survival function of
//! the inverse Gaussian first-passage law over both.
//!
//! Residual life is the ratio P(T > t_k + u) / P(T > t_k), with the event
//! {T > t} taken as independent of the marker data given (η, σ², X).

mod grid;
mod marker;
mod predict;
mod prior;

pub use grid::{
    log_likelihood, mle, posterior_grid, posterior_grid_with, GridSpec, MleEstimate, PosteriorGrid,
    PriorMode,
};
pub use marker::MarkerSeries;
pub use predict::{
    predictive_survival, residual_life_survival, threshold_posterior, ResidualLife, ShiftRule,
    ThresholdPosterior,
};
pub use prior::{eta_prior_logpdf, sigma2_prior_logpdf, sigma2_prior_shape_scale, PriorConfig};
