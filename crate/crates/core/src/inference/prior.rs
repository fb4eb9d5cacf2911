use crate::distcore::special::{ln_beta, ln_gamma};
use crate::error::{Error, Result};
use crate::real::Real;

/// Prior on the marker parameters.
///
/// The drift is η = tan θ with θ = a + (b − a)·W and W ~ Beta(beta_p, beta_q).
/// Given η, σ² is inverse gamma with shape Δ²/(2η) + 1 and scale η/2, which
/// puts its prior mean at η²/Δ² (so Δ standard deviations of Z(1) fit under
/// its mean).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorConfig<T> {
    a: T,
    b: T,
    beta_p: T,
    beta_q: T,
    delta: u32,
}

impl<T: Real> Default for PriorConfig<T> {
    /// θ uniform on (π/8, 3π/8), Δ = 3.
    fn default() -> Self {
        Self {
            a: T::FRAC_PI_8(),
            b: T::lit(3.0) * T::FRAC_PI_8(),
            beta_p: T::one(),
            beta_q: T::one(),
            delta: 3,
        }
    }
}

impl<T: Real> PriorConfig<T> {
    pub fn new(a: T, b: T, beta_p: T, beta_q: T, delta: u32) -> Result<Self> {
        if !(a > T::zero() && a < b && b < T::FRAC_PI_2()) {
            return Err(Error::domain(format!(
                "angle bounds must satisfy 0 < a < b < pi/2, got a={a}, b={b}"
            )));
        }
        for (name, v) in [("beta_p", beta_p), ("beta_q", beta_q)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        if delta == 0 {
            return Err(Error::domain("delta must be a positive integer"));
        }
        Ok(Self {
            a,
            b,
            beta_p,
            beta_q,
            delta,
        })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn beta_p(&self) -> T {
        self.beta_p
    }

    pub fn beta_q(&self) -> T {
        self.beta_q
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// Support of the drift prior, (tan a, tan b).
    pub fn eta_support(&self) -> (T, T) {
        (self.a.tan(), self.b.tan())
    }
}

/// Log density of the drift prior, by change of variables from the
/// translated beta law of θ = arctan η. `-inf` outside (tan a, tan b).
pub fn eta_prior_logpdf<T: Real>(eta: T, p: &PriorConfig<T>) -> T {
    if !(eta > T::zero()) || !eta.is_finite() {
        return T::neg_infinity();
    }
    let theta = eta.atan();
    if !(theta > p.a && theta < p.b) {
        return T::neg_infinity();
    }
    let width = p.b - p.a;
    let u = (theta - p.a) / width;
    let beta_log = (p.beta_p - T::one()) * u.ln() + (p.beta_q - T::one()) * (-u).ln_1p()
        - ln_beta(p.beta_p, p.beta_q);
    beta_log - width.ln() - (eta * eta).ln_1p()
}

/// `(shape, scale)` of the inverse gamma prior of σ² given η.
pub fn sigma2_prior_shape_scale<T: Real>(eta: T, p: &PriorConfig<T>) -> (T, T) {
    let delta = T::from_u32(p.delta).expect("u32 converts");
    (
        delta * delta / (T::lit(2.0) * eta) + T::one(),
        eta / T::lit(2.0),
    )
}

/// Normalised log density of the σ² prior given η:
/// ψ^{−(Δ²/(2η)+2)}·exp(−η/(2ψ)) times βᵅ/Γ(α).
pub fn sigma2_prior_logpdf<T: Real>(sigma2: T, eta: T, p: &PriorConfig<T>) -> T {
    if !(sigma2 > T::zero() && eta > T::zero()) || !sigma2.is_finite() || !eta.is_finite() {
        return T::neg_infinity();
    }
    let (shape, scale) = sigma2_prior_shape_scale(eta, p);
    shape * scale.ln() - ln_gamma(shape) - (shape + T::one()) * sigma2.ln() - scale / sigma2
}
