use rayon::prelude::*;

use super::grid::PosteriorGrid;
use super::marker::MarkerSeries;
use crate::distcore::firstpassage::ig_cdf_unchecked;
use crate::distcore::{Quadrature, WienerParams, MIXTURE_THRESHOLD_CUTOFF};
use crate::error::{Error, Result};
use crate::real::Real;

/// How marker data bound the hazard potential from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShiftRule {
    /// X > Z(t_k).
    #[default]
    LastValue,
    /// X > maxᵢ Z(tᵢ), which every observation before failure also implies.
    RunningMax,
}

/// Posterior of the hazard potential: unit exponential shifted to start at
/// `shift`, density e^{−(x − shift)} for x > shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPosterior<T> {
    shift: T,
}

impl<T: Real> ThresholdPosterior<T> {
    pub fn new(shift: T) -> Result<Self> {
        if shift >= T::zero() && shift.is_finite() {
            Ok(Self { shift })
        } else {
            Err(Error::domain(format!(
                "threshold shift must be finite and >= 0, got {shift}"
            )))
        }
    }

    /// Shift from the data under `rule`, clamped at 0 (the prior already
    /// asserts X > 0).
    pub fn from_markers(m: &MarkerSeries<T>, rule: ShiftRule) -> Self {
        let bound = match rule {
            ShiftRule::LastValue => m.last_value(),
            ShiftRule::RunningMax => m.max_value(),
        };
        Self {
            shift: bound.max(T::zero()),
        }
    }

    pub fn shift(&self) -> T {
        self.shift
    }

    /// P(X > x).
    pub fn survival(&self, x: T) -> T {
        if x <= self.shift {
            T::one()
        } else {
            (self.shift - x).exp()
        }
    }

    pub fn density(&self, x: T) -> T {
        if x <= self.shift {
            T::zero()
        } else {
            (self.shift - x).exp()
        }
    }
}

/// π₂(X; Z): the shift is max(0, Z(t_k)).
pub fn threshold_posterior<T: Real>(m: &MarkerSeries<T>) -> ThresholdPosterior<T> {
    ThresholdPosterior::from_markers(m, ShiftRule::LastValue)
}

/// ∫ (1 − F_{shift+y}(t | η, σ)) e^{−y} dy over y ∈ (0, 40).
fn cell_survival<T: Real>(t: T, w: &WienerParams<T>, shift: T, q: &Quadrature<T>) -> Result<T> {
    q.integrate(
        |y| (T::one() - ig_cdf_unchecked(t, shift + y, w)) * (-y).exp(),
        T::zero(),
        T::lit(MIXTURE_THRESHOLD_CUTOFF),
    )
}

/// Posterior predictive P(T > t; Z): the survival function of the inverse
/// Gaussian first-passage law averaged over the (η, σ²) grid and the
/// threshold posterior. The two posteriors enter only as a product.
pub fn predictive_survival<T: Real>(
    t: T,
    g: &PosteriorGrid<T>,
    xp: &ThresholdPosterior<T>,
    q: &Quadrature<T>,
) -> Result<T> {
    if !(t > T::zero()) {
        return Err(Error::domain(format!("time must be positive, got {t}")));
    }
    if !g.is_normalized() {
        return Err(Error::domain("posterior grid must be normalised"));
    }
    if g.eta_nodes().iter().any(|&e| !(e > T::zero())) {
        return Err(Error::domain(
            "predictive survival needs positive drift nodes",
        ));
    }
    let cells: Vec<(T, T, T)> = g.cells().collect();
    let terms: Vec<Result<T>> = cells
        .par_iter()
        .map(|&(eta, sigma2, mass)| {
            if mass == T::zero() {
                return Ok(T::zero());
            }
            let w = WienerParams::new(eta, sigma2)?;
            Ok(mass * cell_survival(t, &w, xp.shift(), q)?)
        })
        .collect();
    let mut total = T::zero();
    for term in terms {
        total = total + term?;
    }
    Ok(total.max(T::zero()).min(T::one()))
}

/// Residual-life curve u ↦ P(T > t_k + u; Z) / P(T > t_k; Z) with the
/// denominator computed once.
#[derive(Debug, Clone)]
pub struct ResidualLife<'a, T> {
    last_time: T,
    grid: &'a PosteriorGrid<T>,
    threshold: ThresholdPosterior<T>,
    quadrature: Quadrature<T>,
    denominator: T,
}

impl<'a, T: Real> ResidualLife<'a, T> {
    pub fn new(
        last_time: T,
        grid: &'a PosteriorGrid<T>,
        threshold: ThresholdPosterior<T>,
        quadrature: Quadrature<T>,
    ) -> Result<Self> {
        let denominator = predictive_survival(last_time, grid, &threshold, &quadrature)?;
        // Below the quadrature's absolute tolerance the value is noise.
        if !(denominator > quadrature.abs_tol()) {
            return Err(Error::Numeric(format!(
                "predictive survival at t_k = {last_time} is numerically zero ({denominator})"
            )));
        }
        Ok(Self {
            last_time,
            grid,
            threshold,
            quadrature,
            denominator,
        })
    }

    pub fn last_time(&self) -> T {
        self.last_time
    }

    /// P(T > t_k; Z).
    pub fn denominator(&self) -> T {
        self.denominator
    }

    pub fn survival(&self, u: T) -> Result<T> {
        if u.is_nan() || u < T::zero() {
            return Err(Error::domain(format!(
                "residual time must be nonnegative, got {u}"
            )));
        }
        if u.is_infinite() {
            return Ok(T::zero());
        }
        let numerator = predictive_survival(
            self.last_time + u,
            self.grid,
            &self.threshold,
            &self.quadrature,
        )?;
        Ok((numerator / self.denominator).min(T::one()))
    }
}

/// One-shot residual-life survival at `u` for the series `m`.
pub fn residual_life_survival<T: Real>(
    u: T,
    m: &MarkerSeries<T>,
    g: &PosteriorGrid<T>,
    xp: &ThresholdPosterior<T>,
    q: &Quadrature<T>,
) -> Result<T> {
    ResidualLife::new(m.last_time(), g, *xp, *q)?.survival(u)
}
