//! Reproducible path simulation and Monte Carlo estimators.
//!
//! Path `i` of a run draws every random number from its own ChaCha8 stream,
//! keyed by `(seed, i)`. Estimators fan paths out over the rayon pool and
//! reduce the per-path outcomes in index order, so results are bitwise
//! identical for any number of worker threads.

mod estimators;
mod paths;

pub use estimators::{
    mc_dependent_competing_survival, mc_exponential_threshold_hitting, mc_fixed_threshold_hitting,
    mc_trauma_survival, McEstimate,
};
pub use paths::{
    running_max, sample_correlated_bm_pair, sample_gamma_path, sample_wiener_path, CorrelationRho,
    SamplePath,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::real::Real;

/// Time discretisation and Monte Carlo size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathConfig<T> {
    dt: T,
    n_steps: usize,
    n_paths: usize,
    seed: u64,
}

impl<T: Real> PathConfig<T> {
    pub fn new(dt: T, n_steps: usize, n_paths: usize, seed: u64) -> Result<Self> {
        if !(dt > T::zero() && dt.is_finite()) {
            return Err(Error::domain(format!("dt must be positive, got {dt}")));
        }
        if n_steps == 0 {
            return Err(Error::domain("n_steps must be at least 1"));
        }
        if n_paths == 0 {
            return Err(Error::domain("n_paths must be at least 1"));
        }
        Ok(Self {
            dt,
            n_steps,
            n_paths,
            seed,
        })
    }

    /// Config whose horizon just covers `horizon`.
    pub fn covering(dt: T, horizon: T, n_paths: usize, seed: u64) -> Result<Self> {
        if !(horizon > T::zero() && horizon.is_finite()) {
            return Err(Error::domain(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        let provisional = Self::new(dt, 1, n_paths, seed)?;
        let steps = provisional.steps_to(horizon);
        Self::new(dt, steps.max(1), n_paths, seed)
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn horizon(&self) -> T {
        self.dt * T::from_count(self.n_steps)
    }

    /// Grid time of step `j`, computed as `j·dt` rather than by accumulation.
    pub fn time_at(&self, j: usize) -> T {
        T::from_count(j) * self.dt
    }

    /// Number of steps needed to reach `t`; a ratio within a few ulps of an
    /// integer counts as that integer.
    fn steps_to(&self, t: T) -> usize {
        let ratio = t / self.dt;
        let nearest = ratio.round();
        let slack = T::lit(1e-9) * nearest.max(T::one());
        let steps = if (ratio - nearest).abs() <= slack {
            nearest
        } else {
            ratio.ceil()
        };
        steps.to_usize().unwrap_or(usize::MAX)
    }

    /// Steps to cover `(0, t]`, or a domain error if the horizon is too short.
    pub(crate) fn steps_within_horizon(&self, t: T) -> Result<usize> {
        if !(t > T::zero() && t.is_finite()) {
            return Err(Error::domain(format!(
                "time must be positive and finite, got {t}"
            )));
        }
        let steps = self.steps_to(t);
        if steps > self.n_steps {
            return Err(Error::domain(format!(
                "time {t} exceeds the simulation horizon {} (dt {}, {} steps)",
                self.horizon(),
                self.dt,
                self.n_steps
            )));
        }
        Ok(steps)
    }

    pub(crate) fn check_index(&self, path_index: usize) -> Result<()> {
        if path_index < self.n_paths {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "path index {path_index} out of range for {} paths",
                self.n_paths
            )))
        }
    }
}

/// Random stream of path `path_index` under `seed`.
pub fn substream(seed: u64, path_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path_index);
    rng
}
