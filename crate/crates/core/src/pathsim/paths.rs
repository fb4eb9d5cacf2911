use rand::Rng;

use super::{substream, PathConfig};
use crate::distcore::WienerParams;
use crate::error::{Error, Result};
use crate::real::Real;

/// Sampled path on the grid `0, dt, 2dt, …` with `values[0] = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath<T> {
    times: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> SamplePath<T> {
    pub fn new(times: Vec<T>, values: Vec<T>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::domain("path times and values differ in length"));
        }
        if times.first() != Some(&T::zero()) || values.first() != Some(&T::zero()) {
            return Err(Error::domain("path must start at time 0 with value 0"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("path times must strictly increase"));
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Last sampled value.
    pub fn terminal(&self) -> T {
        *self.values.last().expect("paths hold at least one point")
    }
}

/// Correlation ρ ∈ [−1, 1] between two Brownian motions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationRho<T>(T);

impl<T: Real> CorrelationRho<T> {
    pub fn new(rho: T) -> Result<Self> {
        if rho >= -T::one() && rho <= T::one() {
            Ok(Self(rho))
        } else {
            Err(Error::domain(format!(
                "correlation must lie in [-1, 1], got {rho}"
            )))
        }
    }

    pub fn get(self) -> T {
        self.0
    }

    /// √(1 − ρ²), exactly 0 at |ρ| = 1.
    pub(crate) fn complement(self) -> T {
        (T::one() - self.0 * self.0).max(T::zero()).sqrt()
    }
}

/// Euler step generator for a drifted Wiener marker.
pub(crate) struct WienerSteps<T> {
    mean: T,
    sd: T,
}

impl<T: Real> WienerSteps<T> {
    pub(crate) fn new(w: &WienerParams<T>, dt: T) -> Self {
        Self {
            mean: w.eta() * dt,
            sd: (w.sigma2() * dt).sqrt(),
        }
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        self.mean + self.sd * T::std_normal(rng)
    }
}

/// Correlated standard Brownian increments `(dW₁, dW₂)`.
pub(crate) struct PairSteps<T> {
    rho: T,
    complement: T,
    sd: T,
}

impl<T: Real> PairSteps<T> {
    pub(crate) fn new(rho: CorrelationRho<T>, dt: T) -> Self {
        Self {
            rho: rho.get(),
            complement: rho.complement(),
            sd: dt.sqrt(),
        }
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> (T, T) {
        let z1 = T::std_normal(rng);
        let z2 = T::std_normal(rng);
        (
            self.sd * z1,
            self.sd * (self.rho * z1 + self.complement * z2),
        )
    }
}

pub(crate) fn gamma_steps<T: Real>(dt: T) -> Result<T::UnitGamma> {
    T::unit_gamma(dt).ok_or_else(|| Error::domain(format!("invalid gamma shape {dt}")))
}

fn grid<T: Real>(cfg: &PathConfig<T>) -> Vec<T> {
    (0..=cfg.n_steps()).map(|j| cfg.time_at(j)).collect()
}

/// Marker path with independent N(η·dt, σ²·dt) increments; a pure function
/// of `(cfg.seed, path_index)`.
pub fn sample_wiener_path<T: Real>(
    w: &WienerParams<T>,
    cfg: &PathConfig<T>,
    path_index: usize,
) -> Result<SamplePath<T>> {
    cfg.check_index(path_index)?;
    let mut rng = substream(cfg.seed(), path_index as u64);
    let steps = WienerSteps::new(w, cfg.dt());
    let mut values = Vec::with_capacity(cfg.n_steps() + 1);
    let mut z = T::zero();
    values.push(z);
    for _ in 0..cfg.n_steps() {
        z = z + steps.draw(&mut rng);
        values.push(z);
    }
    Ok(SamplePath {
        times: grid(cfg),
        values,
    })
}

/// Running maximum clamped at zero: `out[j] = max(0, max_{i≤j} in[i])`.
pub fn running_max<T: Real>(p: &SamplePath<T>) -> SamplePath<T> {
    let mut acc = T::zero();
    let values = p
        .values
        .iter()
        .map(|&v| {
            acc = acc.max(v);
            acc
        })
        .collect();
    SamplePath {
        times: p.times.clone(),
        values,
    }
}

/// Standard gamma process path: Gamma(shape = dt, scale = 1) increments,
/// so `E H(t) = Var H(t) = t`.
pub fn sample_gamma_path<T: Real>(cfg: &PathConfig<T>, path_index: usize) -> Result<SamplePath<T>> {
    cfg.check_index(path_index)?;
    let dist = gamma_steps(cfg.dt())?;
    let mut rng = substream(cfg.seed(), path_index as u64);
    let mut values = Vec::with_capacity(cfg.n_steps() + 1);
    let mut h = T::zero();
    values.push(h);
    for _ in 0..cfg.n_steps() {
        h = h + rng.sample(&dist);
        values.push(h);
    }
    Ok(SamplePath {
        times: grid(cfg),
        values,
    })
}

/// Two standard Brownian paths whose increments have correlation ρ.
pub fn sample_correlated_bm_pair<T: Real>(
    rho: CorrelationRho<T>,
    cfg: &PathConfig<T>,
    path_index: usize,
) -> Result<(SamplePath<T>, SamplePath<T>)> {
    cfg.check_index(path_index)?;
    let mut rng = substream(cfg.seed(), path_index as u64);
    let steps = PairSteps::new(rho, cfg.dt());
    let n = cfg.n_steps() + 1;
    let (mut first, mut second) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let (mut w1, mut w2) = (T::zero(), T::zero());
    first.push(w1);
    second.push(w2);
    for _ in 0..cfg.n_steps() {
        let (d1, d2) = steps.draw(&mut rng);
        w1 = w1 + d1;
        w2 = w2 + d2;
        first.push(w1);
        second.push(w2);
    }
    let times = grid(cfg);
    Ok((
        SamplePath {
            times: times.clone(),
            values: first,
        },
        SamplePath {
            times,
            values: second,
        },
    ))
}
