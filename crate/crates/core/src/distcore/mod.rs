//! Closed-form distributions: Gaussian functions, inverse Gaussian
//! first-passage laws of a drifted Wiener marker, and the lifetime law of a
//! Wiener maximum process meeting a unit-exponential threshold.

pub(crate) mod firstpassage;
mod quadrature;
pub mod special;

pub use firstpassage::{
    ig_cdf, ig_params_from_threshold, ig_pdf, mixture_lifetime_cdf, reflection_hitting_cdf,
    IgParams, WienerParams, MIXTURE_THRESHOLD_CUTOFF,
};
pub use quadrature::{Integral, Quadrature};
pub use special::{std_normal_cdf, std_normal_logcdf, std_normal_pdf};

use crate::error::Result;
use crate::real::Real;

/// ∫ₐᵇ f(x) dx under the accuracy controls in `q`; `b` may be `+∞` and `a` may be `-∞`.
pub fn integrate<T: Real, F: FnMut(T) -> T>(f: F, a: T, b: T, q: &Quadrature<T>) -> Result<T> {
    q.integrate(f, a, b)
}
