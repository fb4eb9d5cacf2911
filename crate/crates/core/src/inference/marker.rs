use crate::error::{Error, Result};
use crate::real::Real;

/// Marker observations `Z(t₁), …, Z(t_k)` at strictly increasing positive
/// times. `Z(0) = 0` is implicit and never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkerSeries<T> {
    times: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> MarkerSeries<T> {
    /// Errors name the 1-based observation that breaks an invariant.
    pub fn new(times: Vec<T>, values: Vec<T>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidData(format!(
                "{} observation times but {} marker values",
                times.len(),
                values.len()
            )));
        }
        if times.is_empty() {
            return Err(Error::InvalidData(
                "marker series has no observations".into(),
            ));
        }
        let mut prev = T::zero();
        for (i, (&t, &z)) in times.iter().zip(&values).enumerate() {
            let row = i + 1;
            if !t.is_finite() || !z.is_finite() {
                return Err(Error::InvalidData(format!(
                    "observation {row}: non-finite entry"
                )));
            }
            if !(t > prev) {
                return Err(Error::InvalidData(if i == 0 {
                    format!("observation {row}: time {t} must be positive")
                } else {
                    format!("observation {row}: time {t} does not exceed the previous time {prev}")
                }));
            }
            prev = t;
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
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `t_k`.
    pub fn last_time(&self) -> T {
        *self.times.last().expect("validated non-empty")
    }

    /// `Z(t_k)`.
    pub fn last_value(&self) -> T {
        *self.values.last().expect("validated non-empty")
    }

    /// `max_i Z(t_i)`.
    pub fn max_value(&self) -> T {
        self.values.iter().fold(T::neg_infinity(), |m, &v| m.max(v))
    }

    /// `(y_i, s_i)` = (Z(t_i) − Z(t_{i−1}), t_i − t_{i−1}) with `Z(t₀) = t₀ = 0`.
    pub fn increments(&self) -> impl Iterator<Item = (T, T)> + '_ {
        let mut prev = (T::zero(), T::zero());
        self.times.iter().zip(&self.values).map(move |(&t, &z)| {
            let inc = (z - prev.1, t - prev.0);
            prev = (t, z);
            inc
        })
    }
}
