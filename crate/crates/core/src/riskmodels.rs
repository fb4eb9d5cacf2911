//! Closed-form survival under competing risks.
//!
//! Each agent `i` contributes a cumulative hazard `H_i(t)`. With independent
//! unit-exponential hazard potentials the hazards add; with a single shared
//! potential only the largest one matters; the two bracket every series-system
//! dependence structure.

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq)]
enum Shape<T> {
    PowerLaw { scale: T, exponent: T },
    Table { times: Vec<T>, values: Vec<T> },
}

/// Cumulative hazard `H(t)`: nonnegative, nondecreasing, `H(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HazardCurve<T> {
    shape: Shape<T>,
}

impl<T: Real> HazardCurve<T> {
    /// `H(t) = scale · t^exponent`. `exponent = 1` is the "normal" environment,
    /// larger (smaller) exponents accelerate (decelerate) after `t = 1`.
    pub fn power_law(scale: T, exponent: T) -> Result<Self> {
        if !(scale > T::zero() && scale.is_finite()) {
            return Err(Error::domain(format!(
                "power-law scale must be positive, got {scale}"
            )));
        }
        if !(exponent > T::zero() && exponent.is_finite()) {
            return Err(Error::domain(format!(
                "power-law exponent must be positive, got {exponent}"
            )));
        }
        Ok(Self {
            shape: Shape::PowerLaw { scale, exponent },
        })
    }

    /// Piecewise-linear curve through `(times[i], values[i])`. The first knot
    /// must be `(0, 0)`; times strictly increase and values never decrease.
    pub fn table(times: Vec<T>, values: Vec<T>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidData(format!(
                "hazard table has {} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::InvalidData(
                "hazard table needs at least two knots".into(),
            ));
        }
        if times[0] != T::zero() || values[0] != T::zero() {
            return Err(Error::InvalidData(
                "hazard table must start at (0, 0)".into(),
            ));
        }
        for i in 1..times.len() {
            if !times[i].is_finite() || !values[i].is_finite() {
                return Err(Error::InvalidData(format!(
                    "hazard table knot {i} is not finite"
                )));
            }
            if !(times[i] > times[i - 1]) {
                return Err(Error::InvalidData(format!(
                    "hazard table times must strictly increase (knot {i})"
                )));
            }
            if values[i] < values[i - 1] {
                return Err(Error::InvalidData(format!(
                    "hazard table values must not decrease (knot {i})"
                )));
            }
        }
        Ok(Self {
            shape: Shape::Table { times, values },
        })
    }

    /// `H(t)`. Tables refuse to extrapolate past their last knot.
    pub fn eval(&self, t: T) -> Result<T> {
        if t.is_nan() || t < T::zero() {
            return Err(Error::domain(format!("time must be nonnegative, got {t}")));
        }
        match &self.shape {
            Shape::PowerLaw { scale, exponent } => {
                if t == T::zero() {
                    Ok(T::zero())
                } else {
                    Ok(*scale * t.powf(*exponent))
                }
            }
            Shape::Table { times, values } => {
                let last = *times.last().expect("validated non-empty");
                if t > last {
                    return Err(Error::domain(format!(
                        "time {t} lies beyond the last hazard table knot {last}"
                    )));
                }
                // index of the first knot >= t
                let hi = times.partition_point(|&k| k < t);
                if times[hi] == t {
                    return Ok(values[hi]);
                }
                let lo = hi - 1;
                let frac = (t - times[lo]) / (times[hi] - times[lo]);
                Ok(values[lo] + frac * (values[hi] - values[lo]))
            }
        }
    }

    /// Time horizon the curve is defined on (`+∞` for power laws).
    pub fn horizon(&self) -> T {
        match &self.shape {
            Shape::PowerLaw { .. } => T::infinity(),
            Shape::Table { times, .. } => *times.last().expect("validated non-empty"),
        }
    }
}

/// Dependence parameter θ ∈ [0, 1] of Gumbel's bivariate exponential,
/// P(X₁ ≥ x₁, X₂ ≥ x₂) = exp(−x₁ − x₂ − θx₁x₂).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GumbelTheta<T>(T);

impl<T: Real> GumbelTheta<T> {
    pub fn new(theta: T) -> Result<Self> {
        if theta >= T::zero() && theta <= T::one() {
            Ok(Self(theta))
        } else {
            Err(Error::domain(format!(
                "Gumbel theta must lie in [0, 1], got {theta}"
            )))
        }
    }

    pub fn get(self) -> T {
        self.0
    }
}

/// Lower and upper survival bounds of a series system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalBounds<T> {
    pub lower: T,
    pub upper: T,
}

fn evaluate_all<T: Real>(hs: &[HazardCurve<T>], t: T) -> Result<Vec<T>> {
    if hs.is_empty() {
        return Err(Error::domain("at least one hazard curve is required"));
    }
    hs.iter().map(|h| h.eval(t)).collect()
}

fn sum<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, &x| acc + x)
}

fn max<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, &x| acc.max(x))
}

/// exp(−Σᵢ Hᵢ(t)): independent hazard potentials.
pub fn additive_survival<T: Real>(hs: &[HazardCurve<T>], t: T) -> Result<T> {
    let values = evaluate_all(hs, t)?;
    Ok((-sum(&values)).exp())
}

/// exp(−(H₁ + H₂ + θH₁H₂)): hazard potentials with Gumbel's bivariate
/// exponential law.
pub fn gumbel_survival<T: Real>(
    h1: &HazardCurve<T>,
    h2: &HazardCurve<T>,
    theta: GumbelTheta<T>,
    t: T,
) -> Result<T> {
    let a = h1.eval(t)?;
    let b = h2.eval(t)?;
    Ok((-(a + b + theta.0 * a * b)).exp())
}

/// exp(−maxᵢ Hᵢ(t)): a single item carrying one hazard potential under all
/// agents at once.
pub fn max_rule_survival<T: Real>(hs: &[HazardCurve<T>], t: T) -> Result<T> {
    let values = evaluate_all(hs, t)?;
    Ok((-max(&values)).exp())
}

/// `(additive, max-rule)` survival, bracketing P(T ≥ t) for any dependence
/// among the hazard potentials.
pub fn survival_bounds<T: Real>(hs: &[HazardCurve<T>], t: T) -> Result<SurvivalBounds<T>> {
    let values = evaluate_all(hs, t)?;
    Ok(SurvivalBounds {
        lower: (-sum(&values)).exp(),
        upper: (-max(&values)).exp(),
    })
}

/// Survival under trauma whose intensity equals a standard gamma degradation
/// process, infinite threshold: exp(t − (1 + t)·ln(1 + t)).
pub fn trauma_gamma_closed<T: Real>(t: T) -> Result<T> {
    if t.is_nan() || t < T::zero() {
        return Err(Error::domain(format!("time must be nonnegative, got {t}")));
    }
    if t.is_infinite() {
        return Ok(T::zero());
    }
    Ok((t - (T::one() + t) * t.ln_1p()).exp())
}
