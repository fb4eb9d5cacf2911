//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};

/// Floating-point scalar the models are generic over: `f32` or `f64`.
///
/// Besides the arithmetic bounds, the trait carries the handful of random
/// variates the simulators need, so generic code does not have to repeat
/// `rand_distr` where-clauses.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Sampler for Gamma(shape, scale = 1).
    type UnitGamma: Distribution<Self> + Clone + Send + Sync;

    /// Converts an `f64` literal. Every `f64` is representable (possibly rounded).
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to every Real")
    }

    /// Converts a count.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("usize converts to every Real")
    }

    /// `self` as `f64`, for error payloads and I/O.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }

    fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn exp1<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Returns `None` when `shape` is not a positive finite number.
    fn unit_gamma(shape: Self) -> Option<Self::UnitGamma>;
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            type UnitGamma = Gamma<$t>;

            #[inline]
            fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardNormal.sample(rng)
            }

            #[inline]
            fn exp1<R: Rng + ?Sized>(rng: &mut R) -> Self {
                Exp1.sample(rng)
            }

            fn unit_gamma(shape: Self) -> Option<Self::UnitGamma> {
                Gamma::new(shape, 1.0).ok()
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

/// `ln(Σ exp(x_i))` with the usual max shift. Returns `-inf` for an empty or
/// all `-inf` input.
pub fn log_sum_exp<T: Real>(xs: impl IntoIterator<Item = T> + Clone) -> T {
    let max = xs
        .clone()
        .into_iter()
        .fold(T::neg_infinity(), |m, x| if x > m { x } else { m });
    if !max.is_finite() {
        return max;
    }
    let sum = xs
        .into_iter()
        .fold(T::zero(), |acc, x| acc + (x - max).exp());
    max + sum.ln()
}
