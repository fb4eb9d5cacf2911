use crate::error::{Error, Result};
use crate::real::Real;

use super::quadrature::Quadrature;
use super::special::{ln_phi, phi};

/// Upper limit of the threshold integral in [`mixture_lifetime_cdf`].
/// The discarded exponential mass is e^{-40} ≈ 4.2e-18.
pub const MIXTURE_THRESHOLD_CUTOFF: f64 = 40.0;

/// Drift and diffusion of a Wiener marker `Z(t)`, `Z(0) = 0`.
///
/// The drift may be zero or negative here; entry points that need a
/// positive drift (inverse Gaussian laws, inference) check it themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WienerParams<T> {
    eta: T,
    sigma2: T,
}

impl<T: Real> WienerParams<T> {
    pub fn new(eta: T, sigma2: T) -> Result<Self> {
        if !eta.is_finite() {
            return Err(Error::domain(format!("drift must be finite, got {eta}")));
        }
        if !(sigma2 > T::zero() && sigma2.is_finite()) {
            return Err(Error::domain(format!(
                "diffusion sigma2 must be positive and finite, got {sigma2}"
            )));
        }
        Ok(Self { eta, sigma2 })
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    pub fn sigma2(&self) -> T {
        self.sigma2
    }

    pub fn sigma(&self) -> T {
        self.sigma2.sqrt()
    }

    fn require_positive_drift(&self) -> Result<()> {
        if self.eta > T::zero() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "drift must be positive (first-passage mean is infinite otherwise), got {}",
                self.eta
            )))
        }
    }
}

/// Mean `mu` and shape `lambda` of an inverse Gaussian law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IgParams<T> {
    mu: T,
    lambda: T,
}

impl<T: Real> IgParams<T> {
    pub fn new(mu: T, lambda: T) -> Result<Self> {
        for (name, v) in [("mu", mu), ("lambda", lambda)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { mu, lambda })
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }
}

fn check_threshold<T: Real>(x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "threshold must be positive and finite, got {x}"
        )))
    }
}

/// First-passage law of the marker to level `x`: μ = x/η, λ = x²/σ².
pub fn ig_params_from_threshold<T: Real>(x: T, w: &WienerParams<T>) -> Result<IgParams<T>> {
    check_threshold(x)?;
    w.require_positive_drift()?;
    IgParams::new(x / w.eta, x * x / w.sigma2)
}

/// P(T_x ≤ t) for arguments already known to be valid (η > 0, x > 0, t ≥ 0).
pub(crate) fn ig_cdf_unchecked<T: Real>(t: T, x: T, w: &WienerParams<T>) -> T {
    if t <= T::zero() {
        return T::zero();
    }
    if t.is_infinite() {
        return T::one();
    }
    let sigma = w.sigma();
    let root_t = t.sqrt();
    let drift_term = w.eta * root_t / sigma;
    let level_term = x / (sigma * root_t);
    let direct = phi(drift_term - level_term);
    // exp(2ηx/σ²)·Φ(−…) combined in log space; the exponential alone
    // overflows long before the product does.
    let log_reflected = T::lit(2.0) * w.eta * x / w.sigma2 + ln_phi(-drift_term - level_term);
    let v = direct + log_reflected.exp();
    v.max(T::zero()).min(T::one())
}

/// Inverse Gaussian distribution function F_x(t | η, σ): probability that the
/// marker first reaches `x` by time `t`.
pub fn ig_cdf<T: Real>(t: T, x: T, w: &WienerParams<T>) -> Result<T> {
    if t.is_nan() || t < T::zero() {
        return Err(Error::domain(format!("time must be nonnegative, got {t}")));
    }
    check_threshold(x)?;
    w.require_positive_drift()?;
    Ok(ig_cdf_unchecked(t, x, w))
}

/// Inverse Gaussian density of the first-passage time to `x`.
pub fn ig_pdf<T: Real>(t: T, x: T, w: &WienerParams<T>) -> Result<T> {
    if !(t > T::zero()) {
        return Err(Error::domain(format!("time must be positive, got {t}")));
    }
    let ig = ig_params_from_threshold(x, w)?;
    if t.is_infinite() {
        return Ok(T::zero());
    }
    let (mu, lambda) = (ig.mu, ig.lambda);
    let dev = t - mu;
    let log_density = (lambda / (T::TAU() * t * t * t)).ln() / T::lit(2.0)
        - lambda * dev * dev / (T::lit(2.0) * mu * mu * t);
    Ok(log_density.exp())
}

/// Hitting probability of level `x` by a driftless Wiener process:
/// 2·(1 − Φ(x/(σ√t))).
pub fn reflection_hitting_cdf<T: Real>(t: T, x: T, sigma2: T) -> Result<T> {
    check_threshold(x)?;
    if t.is_nan() || t < T::zero() {
        return Err(Error::domain(format!("time must be nonnegative, got {t}")));
    }
    if !(sigma2 > T::zero() && sigma2.is_finite()) {
        return Err(Error::domain(format!(
            "sigma2 must be positive and finite, got {sigma2}"
        )));
    }
    if t == T::zero() {
        return Ok(T::zero());
    }
    let z = x / (sigma2 * t).sqrt();
    // 2(1 − Φ(z)) = 2Φ(−z); the right-hand form keeps precision for large z.
    Ok(T::lit(2.0) * phi(-z))
}

/// Lifetime distribution F(t | η, σ) = ∫₀^∞ F_x(t | η, σ) e^{−x} dx of a unit
/// whose degradation is the running maximum of the marker and whose threshold
/// is unit exponential. Evaluated on (0, 40).
pub fn mixture_lifetime_cdf<T: Real>(t: T, w: &WienerParams<T>, q: &Quadrature<T>) -> Result<T> {
    if t.is_nan() || t < T::zero() {
        return Err(Error::domain(format!("time must be nonnegative, got {t}")));
    }
    w.require_positive_drift()?;
    if t == T::zero() {
        return Ok(T::zero());
    }
    if t.is_infinite() {
        return Ok(T::one());
    }
    let v = q.integrate(
        |x| ig_cdf_unchecked(t, x, w) * (-x).exp(),
        T::zero(),
        T::lit(MIXTURE_THRESHOLD_CUTOFF),
    )?;
    Ok(v.max(T::zero()).min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> WienerParams<f64> {
        WienerParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn threshold_mapping_by_substitution() {
        let p = ig_params_from_threshold(1.0, &unit()).unwrap();
        assert_eq!((p.mu(), p.lambda()), (1.0, 1.0));
        let p = ig_params_from_threshold(2.0, &unit()).unwrap();
        assert_eq!((p.mu(), p.lambda()), (2.0, 4.0));
        let w = WienerParams::new(0.5, 2.0).unwrap();
        let p = ig_params_from_threshold(1.0, &w).unwrap();
        assert_eq!((p.mu(), p.lambda()), (2.0, 0.5));
    }

    #[test]
    fn nonpositive_drift_is_a_domain_error() {
        let w = WienerParams::new(0.0, 1.0).unwrap();
        assert!(matches!(
            ig_params_from_threshold(1.0, &w),
            Err(Error::Domain(_))
        ));
        assert!(ig_cdf(1.0, 1.0, &w).is_err());
        let w = WienerParams::new(-0.3, 1.0).unwrap();
        assert!(ig_pdf(1.0, 1.0, &w).is_err());
        assert!(mixture_lifetime_cdf(1.0, &w, &Quadrature::default()).is_err());
    }

    #[test]
    fn invalid_types_are_rejected() {
        assert!(WienerParams::new(1.0, 0.0).is_err());
        assert!(WienerParams::new(f64::NAN, 1.0).is_err());
        assert!(IgParams::new(0.0, 1.0).is_err());
        assert!(IgParams::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn ig_cdf_reference_values() {
        let w = unit();
        assert_eq!(ig_cdf(0.0, 1.0, &w).unwrap(), 0.0);
        // Φ(0) + e²Φ(−2), 30-digit mpmath: 0.668102001223170606
        let v = ig_cdf(1.0, 1.0, &w).unwrap();
        assert!((v - 0.668_102_001_223_170_6).abs() < 1e-12, "{v}");
        assert!((ig_cdf(1e8, 1.0, &w).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(ig_cdf(f64::INFINITY, 1.0, &w).unwrap(), 1.0);
    }

    #[test]
    fn ig_cdf_argument_errors() {
        let w = unit();
        assert!(ig_cdf(-1.0, 1.0, &w).is_err());
        assert!(ig_cdf(1.0, 0.0, &w).is_err());
        assert!(ig_cdf(1.0, -2.0, &w).is_err());
    }

    #[test]
    fn ig_pdf_peak_and_boundary() {
        let w = unit();
        let v = ig_pdf(1.0, 1.0, &w).unwrap();
        assert!((v - 0.398_942_280_401_432_7).abs() < 1e-12);
        // central finite difference of the CDF
        let h = 1e-5;
        let fd =
            (ig_cdf(1.0 + h, 1.0, &w).unwrap() - ig_cdf(1.0 - h, 1.0, &w).unwrap()) / (2.0 * h);
        assert!((fd - v).abs() < 1e-7);
        assert!(ig_pdf(1e-4, 1.0, &w).unwrap() < 1e-100);
        assert!(ig_pdf(0.0, 1.0, &w).is_err());
    }

    #[test]
    fn ig_pdf_integrates_to_one() {
        let q = Quadrature::default();
        for &(x, eta, s2) in &[(1.0, 1.0, 1.0), (3.0, 0.5, 2.0), (0.2, 2.0, 0.1)] {
            let w = WienerParams::new(eta, s2).unwrap();
            let total = q
                .integrate(|t| ig_pdf(t, x, &w).unwrap(), 0.0, f64::INFINITY)
                .unwrap();
            assert!((total - 1.0).abs() < 1e-6, "x={x}: {total}");
        }
    }

    #[test]
    fn cdf_equals_integrated_density_on_grid() {
        let q = Quadrature::default();
        let w = WienerParams::new(0.8, 1.5).unwrap();
        for &x in &[0.3f64, 1.0, 2.5] {
            for &t in &[0.2, 1.0, 3.0, 7.0] {
                let direct = ig_cdf(t, x, &w).unwrap();
                let quad = q.integrate(|s| ig_pdf(s, x, &w).unwrap(), 0.0, t).unwrap();
                assert!((direct - quad).abs() < 1e-6, "t={t} x={x}");
            }
        }
    }

    #[test]
    fn monotone_in_time_and_threshold_on_grid() {
        let w = WienerParams::new(0.7, 1.3).unwrap();
        let ts: Vec<f64> = (1..=20).map(|i| 0.25 * i as f64).collect();
        let xs: Vec<f64> = (1..=20).map(|i| 0.2 * i as f64).collect();
        for &x in &xs {
            for pair in ts.windows(2) {
                assert!(ig_cdf(pair[0], x, &w).unwrap() <= ig_cdf(pair[1], x, &w).unwrap());
            }
        }
        for &t in &ts {
            for pair in xs.windows(2) {
                assert!(ig_cdf(t, pair[0], &w).unwrap() >= ig_cdf(t, pair[1], &w).unwrap());
            }
        }
    }

    #[test]
    fn no_overflow_at_large_exponent() {
        let w = WienerParams::new(1.0, 1.0).unwrap();
        // 2ηx/σ² = 700
        let x = 700.0 * w.sigma2() / (2.0 * w.eta());
        for &t in &[1.0f64, 100.0, 350.0, 1000.0, 1e5] {
            let v = ig_cdf(t, x, &w).unwrap();
            assert!(v.is_finite() && (0.0..=1.0).contains(&v), "t={t}: {v}");
        }
        // far beyond: exp(2ηx/σ²) alone would be +inf
        let w = WienerParams::new(2.0f64, 0.01).unwrap();
        let v = ig_cdf(6.0, 10.0, &w).unwrap();
        assert!(v.is_finite() && v > 0.9);
    }

    #[test]
    fn reflection_reference_values() {
        let v = reflection_hitting_cdf(1.0f64, 1.0, 1.0).unwrap();
        assert!((v - 0.317_310_507_862_914_1).abs() < 1e-12);
        assert_eq!(reflection_hitting_cdf(0.0, 1.0, 1.0).unwrap(), 0.0);
        assert!((reflection_hitting_cdf(1e16f64, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-7);
        assert!(reflection_hitting_cdf(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn mixture_reference_value_and_closed_form() {
        let q = Quadrature::default();
        let w = unit();
        let v = mixture_lifetime_cdf(1.0, &w, &q).unwrap();
        let p = |z: f64| phi(z);
        let closed = p(1.0) - (-0.5f64).exp() * p(0.0) + p(0.0) * (-0.5f64).exp() - p(-1.0);
        assert!((v - closed).abs() < 1e-8, "{v} vs {closed}");
        assert!((v - 0.6827).abs() < 0.005);
        assert_eq!(mixture_lifetime_cdf(0.0, &w, &q).unwrap(), 0.0);
    }

    #[test]
    fn mixture_dominates_distant_threshold() {
        let q = Quadrature::default();
        let w = WienerParams::new(1.0, 1.0).unwrap();
        let mut prev = 0.0;
        for i in 1..=40 {
            let t = 0.25 * i as f64;
            let m = mixture_lifetime_cdf(t, &w, &q).unwrap();
            assert!(m >= ig_cdf(t, 5.0, &w).unwrap() && m <= 1.0);
            assert!(m >= prev);
            prev = m;
        }
    }
}
