use rand::Rng;
use rayon::prelude::*;

use super::paths::{gamma_steps, PairSteps, WienerSteps};
use super::{substream, CorrelationRho, PathConfig};
use crate::distcore::WienerParams;
use crate::error::{Error, Result};
use crate::real::Real;

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate<T> {
    pub value: T,
    pub std_err: T,
    pub n_paths: usize,
}

impl<T: Real> McEstimate<T> {
    /// Proportion estimate with std error √(p(1−p)/n).
    pub fn bernoulli(successes: usize, n_paths: usize) -> Self {
        let n = T::from_count(n_paths);
        let value = T::from_count(successes) / n;
        Self {
            value,
            std_err: (value * (T::one() - value) / n).sqrt(),
            n_paths,
        }
    }

    /// Sample mean with std error s/√n; samples are summed in slice order.
    pub fn from_samples(samples: &[T]) -> Self {
        let n_paths = samples.len();
        let n = T::from_count(n_paths);
        let mean = samples.iter().fold(T::zero(), |s, &x| s + x) / n;
        let var = if n_paths > 1 {
            samples
                .iter()
                .fold(T::zero(), |s, &x| s + (x - mean) * (x - mean))
                / (n - T::one())
        } else {
            T::zero()
        };
        Self {
            value: mean,
            std_err: (var / n).sqrt(),
            n_paths,
        }
    }

    /// `1 − value`, same standard error.
    pub fn complement(self) -> Self {
        Self {
            value: T::one() - self.value,
            ..self
        }
    }
}

fn count_true(outcomes: Vec<bool>) -> usize {
    outcomes.into_iter().filter(|&b| b).count()
}

/// Fraction of marker paths whose sampled maximum reaches `x` by time `t`.
///
/// Path `i` is exactly `sample_wiener_path(w, cfg, i)`. The discrete maximum
/// misses excursions between grid points, so the estimate of the inverse
/// Gaussian CDF is biased low by O(√dt).
pub fn mc_fixed_threshold_hitting<T: Real>(
    w: &WienerParams<T>,
    x: T,
    t: T,
    cfg: &PathConfig<T>,
) -> Result<McEstimate<T>> {
    if !(x > T::zero()) {
        return Err(Error::domain(format!(
            "threshold must be positive, got {x}"
        )));
    }
    let steps = cfg.steps_within_horizon(t)?;
    let inc = WienerSteps::new(w, cfg.dt());
    let hits: Vec<bool> = (0..cfg.n_paths())
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(cfg.seed(), i as u64);
            let mut z = T::zero();
            for _ in 0..steps {
                z = z + inc.draw(&mut rng);
                if z >= x {
                    return true;
                }
            }
            false
        })
        .collect();
    Ok(McEstimate::bernoulli(count_true(hits), cfg.n_paths()))
}

/// Probability that the marker's running maximum reaches a fresh Exp(1)
/// threshold by time `t`. Each path draws its threshold first, then its
/// increments, from its own substream.
pub fn mc_exponential_threshold_hitting<T: Real>(
    w: &WienerParams<T>,
    t: T,
    cfg: &PathConfig<T>,
) -> Result<McEstimate<T>> {
    let steps = cfg.steps_within_horizon(t)?;
    let inc = WienerSteps::new(w, cfg.dt());
    let hits: Vec<bool> = (0..cfg.n_paths())
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(cfg.seed(), i as u64);
            let threshold = T::exp1(&mut rng);
            let mut z = T::zero();
            for _ in 0..steps {
                z = z + inc.draw(&mut rng);
                if z >= threshold {
                    return true;
                }
            }
            false
        })
        .collect();
    Ok(McEstimate::bernoulli(count_true(hits), cfg.n_paths()))
}

/// P(T ≥ t) for an item whose two competing risks are the running maxima of
/// standard Brownian motions with correlation ρ, racing to one shared Exp(1)
/// hazard potential: P(max(H₁(t), H₂(t)) ≤ X).
pub fn mc_dependent_competing_survival<T: Real>(
    rho: CorrelationRho<T>,
    t: T,
    cfg: &PathConfig<T>,
) -> Result<McEstimate<T>> {
    let steps = cfg.steps_within_horizon(t)?;
    let inc = PairSteps::new(rho, cfg.dt());
    let survived: Vec<bool> = (0..cfg.n_paths())
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(cfg.seed(), i as u64);
            let threshold = T::exp1(&mut rng);
            let (mut w1, mut w2) = (T::zero(), T::zero());
            for _ in 0..steps {
                let (d1, d2) = inc.draw(&mut rng);
                w1 = w1 + d1;
                w2 = w2 + d2;
                if w1 > threshold || w2 > threshold {
                    return false;
                }
            }
            true
        })
        .collect();
    Ok(McEstimate::bernoulli(count_true(survived), cfg.n_paths()))
}

/// Survival under trauma driven by a standard gamma degradation process:
/// the mean over paths of exp(−∫₀ᵗ H(s) ds)·1{H(t) ≤ threshold}, with the
/// time integral taken by the trapezoidal rule on the path grid. Pass
/// `T::infinity()` for an unbounded threshold.
///
/// Path `i` is exactly `sample_gamma_path(cfg, i)`.
pub fn mc_trauma_survival<T: Real>(
    t: T,
    threshold: T,
    cfg: &PathConfig<T>,
) -> Result<McEstimate<T>> {
    if threshold.is_nan() || threshold <= T::zero() {
        return Err(Error::domain(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    let steps = cfg.steps_within_horizon(t)?;
    let dist = gamma_steps(cfg.dt())?;
    let half_dt = cfg.dt() / T::lit(2.0);
    let samples: Vec<T> = (0..cfg.n_paths())
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(cfg.seed(), i as u64);
            let mut h = T::zero();
            let mut area = T::zero();
            for _ in 0..steps {
                let next = h + rng.sample(&dist);
                area = area + half_dt * (h + next);
                h = next;
            }
            if h <= threshold {
                (-area).exp()
            } else {
                T::zero()
            }
        })
        .collect();
    Ok(McEstimate::from_samples(&samples))
}
