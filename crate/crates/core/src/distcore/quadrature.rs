//! Adaptive Gauss–Kronrod (7/15) quadrature with global interval bisection.
//!
//! Semi-infinite and infinite ranges are mapped onto (0, 1] with
//! `x = a + (1 - u) / u`; the doubly infinite case is split at zero.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::real::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Accuracy controls for [`Quadrature::integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    rel_tol: T,
    abs_tol: T,
    max_subdivisions: usize,
}

impl<T: Real> Default for Quadrature<T> {
    /// rel 1e-8, abs 1e-10, 2^14 intervals; tolerances are raised to a small
    /// multiple of machine epsilon for `f32`.
    fn default() -> Self {
        let floor = T::epsilon() * T::lit(64.0);
        Self {
            rel_tol: T::lit(1e-8).max(floor),
            abs_tol: T::lit(1e-10).max(floor),
            max_subdivisions: 1 << 14,
        }
    }
}

/// Integral value with the error estimate it was accepted at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub abs_error: T,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

fn kronrod<T: Real>(f: &mut dyn FnMut(T) -> T, lo: T, hi: T) -> Segment<T> {
    let l = T::lit;
    let half = (hi - lo) / l(2.0);
    let center = lo + half;
    let fc = f(center);
    let mut k = fc * l(WGK[7]);
    let mut g = fc * l(WG[3]);
    for j in 0..7 {
        let dx = half * l(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        k = k + pair * l(WGK[j]);
        if j % 2 == 1 {
            g = g + pair * l(WG[j / 2]);
        }
    }
    let value = k * half;
    let error = ((k - g) * half).abs();
    Segment {
        lo,
        hi,
        value,
        error,
    }
}

impl<T: Real> Quadrature<T> {
    pub fn new(rel_tol: T, abs_tol: T, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > T::zero() && rel_tol.is_finite()) {
            return Err(Error::domain(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        if !(abs_tol > T::zero() && abs_tol.is_finite()) {
            return Err(Error::domain(format!(
                "abs_tol must be positive, got {abs_tol}"
            )));
        }
        if max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be at least 1"));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }

    pub fn rel_tol(&self) -> T {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> T {
        self.abs_tol
    }

    pub fn max_subdivisions(&self) -> usize {
        self.max_subdivisions
    }

    /// ∫ₐᵇ f, where either bound may be infinite.
    pub fn integrate<F: FnMut(T) -> T>(&self, f: F, a: T, b: T) -> Result<T> {
        self.integrate_detailed(f, a, b).map(|r| r.value)
    }

    pub fn integrate_detailed<F: FnMut(T) -> T>(
        &self,
        mut f: F,
        a: T,
        b: T,
    ) -> Result<Integral<T>> {
        self.dispatch(&mut f, a, b)
    }

    fn dispatch(&self, f: &mut dyn FnMut(T) -> T, a: T, b: T) -> Result<Integral<T>> {
        if a.is_nan() || b.is_nan() || !(a < b) {
            return Err(Error::domain(format!(
                "integration bounds must satisfy a < b, got ({a}, {b})"
            )));
        }
        let one = T::one();
        match (a.is_finite(), b.is_finite()) {
            (true, true) => self.adapt(f, a, b),
            (true, false) => self.adapt(
                &mut |u: T| {
                    let x = a + (one - u) / u;
                    f(x) / (u * u)
                },
                T::zero(),
                one,
            ),
            (false, true) => self.adapt(
                &mut |u: T| {
                    let x = b - (one - u) / u;
                    f(x) / (u * u)
                },
                T::zero(),
                one,
            ),
            (false, false) => {
                // Split at zero; each half gets half the absolute budget.
                let half = Self {
                    rel_tol: self.rel_tol,
                    abs_tol: self.abs_tol / T::lit(2.0),
                    max_subdivisions: self.max_subdivisions.div_ceil(2),
                };
                let left = half.dispatch(f, T::neg_infinity(), T::zero())?;
                let right = half.dispatch(f, T::zero(), T::infinity())?;
                Ok(Integral {
                    value: left.value + right.value,
                    abs_error: left.abs_error + right.abs_error,
                    intervals: left.intervals + right.intervals,
                })
            }
        }
    }

    fn adapt(&self, f: &mut dyn FnMut(T) -> T, lo: T, hi: T) -> Result<Integral<T>> {
        let first = kronrod(f, lo, hi);
        let mut value = first.value;
        let mut error = first.error;
        let mut active = BinaryHeap::new();
        active.push(first);
        // Segments too narrow to bisect further; their error stays in the total.
        let mut frozen: Vec<Segment<T>> = Vec::new();
        let mut intervals = 1usize;

        loop {
            if !value.is_finite() || !error.is_finite() {
                return Err(Error::Numeric(format!(
                    "integrand produced a non-finite value on ({lo}, {hi})"
                )));
            }
            let target = self.abs_tol.max(self.rel_tol * value.abs());
            if error <= target {
                // Re-sum to shed drift from the incremental updates.
                let value = active
                    .iter()
                    .chain(frozen.iter())
                    .fold(T::zero(), |s, seg| s + seg.value);
                return Ok(Integral {
                    value,
                    abs_error: error,
                    intervals,
                });
            }
            if intervals >= self.max_subdivisions {
                return Err(self.give_up(value, error, intervals));
            }
            let Some(worst) = active.pop() else {
                return Err(self.give_up(value, error, intervals));
            };
            let mid = worst.lo + (worst.hi - worst.lo) / T::lit(2.0);
            if !(mid > worst.lo && mid < worst.hi) {
                frozen.push(worst);
                continue;
            }
            let left = kronrod(f, worst.lo, mid);
            let right = kronrod(f, mid, worst.hi);
            value = value - worst.value + left.value + right.value;
            error = error - worst.error + left.error + right.error;
            active.push(left);
            active.push(right);
            intervals += 1;
        }
    }

    fn give_up(&self, value: T, error: T, intervals: usize) -> Error {
        Error::QuadratureNonConvergence {
            estimate: value.as_f64(),
            achieved_error: error.as_f64(),
            subdivisions: intervals,
        }
    }
}
