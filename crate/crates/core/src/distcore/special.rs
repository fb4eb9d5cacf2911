//! Gaussian special functions and log-gamma.
//!
//! The error function uses rational Chebyshev approximations on three ranges
//! split at 0.46875 and 4, accurate to roughly machine precision in `f64`.
//! The same coefficients are used for `f32`.

// Coefficient tables are kept exactly as published.
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};
use crate::real::Real;

const ERF_A: [f64; 5] = [
    3.161_123_743_870_565_6e0,
    1.138_641_541_510_501_6e2,
    3.774_852_376_853_020_2e2,
    3.209_377_589_138_469_5e3,
    1.857_777_061_846_031_5e-1,
];
const ERF_B: [f64; 4] = [
    2.360_129_095_234_412e1,
    2.440_246_379_344_441_7e2,
    1.282_616_526_077_372_3e3,
    2.844_236_833_439_170_6e3,
];
const ERF_C: [f64; 9] = [
    5.641_884_969_886_701e-1,
    8.883_149_794_388_376,
    6.611_919_063_714_163e1,
    2.986_351_381_974_001_3e2,
    8.819_522_212_417_691e2,
    1.712_047_612_634_070_6e3,
    2.051_078_377_826_071_5e3,
    1.230_339_354_797_997_2e3,
    2.153_115_354_744_038_5e-8,
];
const ERF_D: [f64; 8] = [
    1.574_492_611_070_983_5e1,
    1.176_939_508_913_125e2,
    5.371_811_018_620_099e2,
    1.621_389_574_566_690_2e3,
    3.290_799_235_733_46e3,
    4.362_619_090_143_247e3,
    3.439_367_674_143_721_6e3,
    1.230_339_354_803_749_4e3,
];
const ERF_P: [f64; 6] = [
    3.053_266_349_612_323_4e-1,
    3.603_448_999_498_044_4e-1,
    1.257_817_261_112_292_5e-1,
    1.608_378_514_874_227_7e-2,
    6.587_491_615_298_378e-4,
    1.631_538_713_730_209_8e-2,
];
const ERF_Q: [f64; 5] = [
    2.568_520_192_289_822,
    1.872_952_849_923_467_3,
    5.279_051_029_514_284e-1,
    6.051_834_131_244_132e-2,
    2.335_204_976_268_691_8e-3,
];

const ERF_SPLIT: f64 = 0.46875;

/// erf(x) for |x| <= 0.46875.
fn erf_small<T: Real>(x: T) -> T {
    let l = T::lit;
    let ysq = x * x;
    let mut num = l(ERF_A[4]) * ysq;
    let mut den = ysq;
    for i in 0..3 {
        num = (num + l(ERF_A[i])) * ysq;
        den = (den + l(ERF_B[i])) * ysq;
    }
    x * (num + l(ERF_A[3])) / (den + l(ERF_B[3]))
}

/// exp(y²)·erfc(y) for y > 0.46875.
fn erfcx_tail<T: Real>(y: T) -> T {
    let l = T::lit;
    if y <= l(4.0) {
        let mut num = l(ERF_C[8]) * y;
        let mut den = y;
        for i in 0..7 {
            num = (num + l(ERF_C[i])) * y;
            den = (den + l(ERF_D[i])) * y;
        }
        (num + l(ERF_C[7])) / (den + l(ERF_D[7]))
    } else {
        let z = (y * y).recip();
        let mut num = l(ERF_P[5]) * z;
        let mut den = z;
        for i in 0..4 {
            num = (num + l(ERF_P[i])) * z;
            den = (den + l(ERF_Q[i])) * z;
        }
        let r = z * (num + l(ERF_P[4])) / (den + l(ERF_Q[4]));
        (T::FRAC_2_SQRT_PI() / l(2.0) - r) / y
    }
}

/// exp(-y²) evaluated as exp(-h²)·exp(-(y-h)(y+h)) with h = y truncated to
/// 1/16, which keeps the relative error of the product small for large y.
fn exp_neg_sq<T: Real>(y: T) -> T {
    let sixteen = T::lit(16.0);
    let h = (y * sixteen).trunc() / sixteen;
    let del = (y - h) * (y + h);
    (-h * h).exp() * (-del).exp()
}

/// Complementary error function.
pub fn erfc<T: Real>(x: T) -> T {
    let y = x.abs();
    if y <= T::lit(ERF_SPLIT) {
        return T::one() - erf_small(x);
    }
    let tail = erfcx_tail(y) * exp_neg_sq(y);
    if x < T::zero() {
        T::lit(2.0) - tail
    } else {
        tail
    }
}

pub fn erf<T: Real>(x: T) -> T {
    let y = x.abs();
    if y <= T::lit(ERF_SPLIT) {
        return erf_small(x);
    }
    let v = T::one() - erfcx_tail(y) * exp_neg_sq(y);
    if x < T::zero() {
        -v
    } else {
        v
    }
}

/// Scaled complementary error function exp(x²)·erfc(x), for x >= 0.
pub fn erfcx_nonneg<T: Real>(x: T) -> T {
    debug_assert!(x >= T::zero());
    if x <= T::lit(ERF_SPLIT) {
        (x * x).exp() * (T::one() - erf_small(x))
    } else {
        erfcx_tail(x)
    }
}

/// Φ(z) without argument checks; infinities map to 0 and 1.
#[inline]
pub(crate) fn phi<T: Real>(z: T) -> T {
    T::lit(0.5) * erfc(-z * T::FRAC_1_SQRT_2())
}

/// ln Φ(z), finite for every finite z.
pub(crate) fn ln_phi<T: Real>(z: T) -> T {
    if z > T::zero() {
        // Φ(z) = 1 - Φ(-z); ln_1p keeps the tiny complement.
        (-phi(-z)).ln_1p()
    } else if z > T::lit(-5.0) {
        phi(z).ln()
    } else {
        let u = -z * T::FRAC_1_SQRT_2();
        (T::lit(0.5) * erfcx_nonneg(u)).ln() - u * u
    }
}

fn check_finite<T: Real>(z: T, what: &str) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} requires a finite argument, got {z}"
        )))
    }
}

/// Standard Gaussian distribution function Φ(z).
pub fn std_normal_cdf<T: Real>(z: T) -> Result<T> {
    check_finite(z, "std_normal_cdf")?;
    Ok(phi(z))
}

/// ln Φ(z), accurate in the far left tail where Φ itself underflows.
pub fn std_normal_logcdf<T: Real>(z: T) -> Result<T> {
    check_finite(z, "std_normal_logcdf")?;
    Ok(ln_phi(z))
}

/// Standard Gaussian density φ(z).
pub fn std_normal_pdf<T: Real>(z: T) -> Result<T> {
    check_finite(z, "std_normal_pdf")?;
    Ok(normal_density(z))
}

#[inline]
pub(crate) fn normal_density<T: Real>(z: T) -> T {
    (-(z * z) / T::lit(2.0)).exp() / (T::TAU()).sqrt()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0 (Lanczos, g = 7).
pub fn ln_gamma<T: Real>(x: T) -> T {
    let l = T::lit;
    if x < l(0.5) {
        // Reflection: Γ(x)Γ(1-x) = π / sin(πx).
        return (T::PI() / (T::PI() * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = l(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + l(c) / (x + T::from_count(i));
    }
    let t = x + l(LANCZOS_G) + l(0.5);
    l(0.5) * T::TAU().ln() + (x + l(0.5)) * t.ln() - t + acc.ln()
}

/// ln B(p, q).
pub fn ln_beta<T: Real>(p: T, q: T) -> T {
    ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)
}
