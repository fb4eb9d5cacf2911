use rayon::prelude::*;

use super::marker::MarkerSeries;
use super::prior::{eta_prior_logpdf, sigma2_prior_logpdf, PriorConfig};
use crate::distcore::WienerParams;
use crate::error::{Error, Result};
use crate::real::{log_sum_exp, Real};

/// Gaussian-increment log-likelihood: Σᵢ log N(yᵢ; η·sᵢ, σ²·sᵢ).
pub fn log_likelihood<T: Real>(w: &WienerParams<T>, m: &MarkerSeries<T>) -> T {
    let two = T::lit(2.0);
    m.increments().fold(T::zero(), |acc, (y, s)| {
        let var = w.sigma2() * s;
        let dev = y - w.eta() * s;
        acc - (T::TAU() * var).ln() / two - dev * dev / (two * var)
    })
}

/// Maximum-likelihood drift and diffusion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleEstimate<T> {
    pub eta: T,
    pub sigma2: T,
}

/// η̂ = Z(t_k)/t_k and σ̂² = (1/k)·Σ(yᵢ − η̂sᵢ)²/sᵢ. Needs k ≥ 2.
pub fn mle<T: Real>(m: &MarkerSeries<T>) -> Result<MleEstimate<T>> {
    if m.len() < 2 {
        return Err(Error::domain(
            "at least two marker observations are needed to identify sigma2",
        ));
    }
    let eta = m.last_value() / m.last_time();
    let ss = m.increments().fold(T::zero(), |acc, (y, s)| {
        let r = y - eta * s;
        acc + r * r / s
    });
    Ok(MleEstimate {
        eta,
        sigma2: ss / T::from_count(m.len()),
    })
}

/// Which prior enters the grid posterior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PriorMode {
    #[default]
    Informative,
    /// Constant density over the grid box; the posterior is the normalised
    /// likelihood.
    Flat,
}

/// Grid resolution and σ² range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub n_eta: usize,
    pub n_sigma2: usize,
    /// `None` spans [σ̂²/100, 100·σ̂²] around the MLE.
    pub sigma2_bounds: Option<(T, T)>,
    pub prior_mode: PriorMode,
}

impl<T> GridSpec<T> {
    pub fn new(n_eta: usize, n_sigma2: usize) -> Self {
        Self {
            n_eta,
            n_sigma2,
            sigma2_bounds: None,
            prior_mode: PriorMode::Informative,
        }
    }
}

/// Discretised posterior density over (η, σ²).
///
/// Cell `(i, j)` is centred at `(eta_nodes[i], sigma2_nodes[j])` with widths
/// `eta_widths[i] × sigma2_widths[j]`; `log_density` is row-major in η. When
/// normalised, Σ exp(log_density)·area = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorGrid<T> {
    eta_nodes: Vec<T>,
    eta_widths: Vec<T>,
    sigma2_nodes: Vec<T>,
    sigma2_widths: Vec<T>,
    log_density: Vec<T>,
    normalized: bool,
}

fn check_axis<T: Real>(name: &str, nodes: &[T], widths: &[T]) -> Result<()> {
    if nodes.is_empty() || nodes.len() != widths.len() {
        return Err(Error::InvalidData(format!(
            "{name} axis needs matching, non-empty node and width lists"
        )));
    }
    if nodes.iter().any(|&v| !(v > T::zero() && v.is_finite())) {
        return Err(Error::InvalidData(format!(
            "{name} nodes must be positive and finite"
        )));
    }
    if nodes.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidData(format!(
            "{name} nodes must strictly increase"
        )));
    }
    if widths.iter().any(|&v| !(v > T::zero() && v.is_finite())) {
        return Err(Error::InvalidData(format!(
            "{name} cell widths must be positive"
        )));
    }
    Ok(())
}

impl<T: Real> PosteriorGrid<T> {
    /// Rebuilds a grid from stored parts; `log_density` is renormalised when
    /// `normalize` is set.
    pub fn from_parts(
        eta_nodes: Vec<T>,
        eta_widths: Vec<T>,
        sigma2_nodes: Vec<T>,
        sigma2_widths: Vec<T>,
        log_density: Vec<T>,
        normalize: bool,
    ) -> Result<Self> {
        check_axis("eta", &eta_nodes, &eta_widths)?;
        check_axis("sigma2", &sigma2_nodes, &sigma2_widths)?;
        if log_density.len() != eta_nodes.len() * sigma2_nodes.len() {
            return Err(Error::InvalidData(format!(
                "expected {} log densities, found {}",
                eta_nodes.len() * sigma2_nodes.len(),
                log_density.len()
            )));
        }
        if log_density
            .iter()
            .any(|v| v.is_nan() || *v == T::infinity())
        {
            return Err(Error::InvalidData(
                "log densities must be finite or -inf".into(),
            ));
        }
        let mut grid = Self {
            eta_nodes,
            eta_widths,
            sigma2_nodes,
            sigma2_widths,
            log_density,
            normalized: false,
        };
        if normalize {
            grid.normalize()?;
        }
        Ok(grid)
    }

    /// All posterior mass on one (η, σ²) pair.
    pub fn point_mass(eta: T, sigma2: T) -> Result<Self> {
        WienerParams::new(eta, sigma2)?;
        Self::from_parts(
            vec![eta],
            vec![T::one()],
            vec![sigma2],
            vec![T::one()],
            vec![T::zero()],
            true,
        )
    }

    fn log_area(&self, i: usize, j: usize) -> T {
        self.eta_widths[i].ln() + self.sigma2_widths[j].ln()
    }

    fn normalize(&mut self) -> Result<()> {
        let n_s = self.sigma2_nodes.len();
        let log_total = log_sum_exp(
            (0..self.log_density.len())
                .map(|k| self.log_density[k] + self.log_area(k / n_s, k % n_s)),
        );
        if !log_total.is_finite() {
            return Err(Error::Numeric(
                "posterior has no finite mass on the grid; widen or move the grid bounds".into(),
            ));
        }
        for v in &mut self.log_density {
            *v = *v - log_total;
        }
        self.normalized = true;
        Ok(())
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn n_eta(&self) -> usize {
        self.eta_nodes.len()
    }

    pub fn n_sigma2(&self) -> usize {
        self.sigma2_nodes.len()
    }

    pub fn eta_nodes(&self) -> &[T] {
        &self.eta_nodes
    }

    pub fn eta_widths(&self) -> &[T] {
        &self.eta_widths
    }

    pub fn sigma2_nodes(&self) -> &[T] {
        &self.sigma2_nodes
    }

    pub fn sigma2_widths(&self) -> &[T] {
        &self.sigma2_widths
    }

    /// Row-major (η outer) log densities.
    pub fn log_densities(&self) -> &[T] {
        &self.log_density
    }

    pub fn log_density(&self, i: usize, j: usize) -> T {
        self.log_density[i * self.n_sigma2() + j]
    }

    /// Probability mass of cell `(i, j)`.
    pub fn cell_mass(&self, i: usize, j: usize) -> T {
        (self.log_density(i, j) + self.log_area(i, j)).exp()
    }

    /// `(eta, sigma2, mass)` for every cell, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        let n_s = self.n_sigma2();
        (0..self.log_density.len()).map(move |k| {
            let (i, j) = (k / n_s, k % n_s);
            (
                self.eta_nodes[i],
                self.sigma2_nodes[j],
                self.cell_mass(i, j),
            )
        })
    }

    pub fn total_mass(&self) -> T {
        self.cells().fold(T::zero(), |s, c| s + c.2)
    }

    /// Posterior means `(E η, E σ²)`.
    pub fn posterior_mean(&self) -> (T, T) {
        self.cells()
            .fold((T::zero(), T::zero()), |(e, s), (eta, s2, m)| {
                (e + m * eta, s + m * s2)
            })
    }

    /// Index `(i, j)` of the highest-density cell.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for k in 1..self.log_density.len() {
            if self.log_density[k] > self.log_density[best] {
                best = k;
            }
        }
        (best / self.n_sigma2(), best % self.n_sigma2())
    }

    /// Node coordinates of the highest-density cell.
    pub fn mode(&self) -> (T, T) {
        let (i, j) = self.argmax();
        (self.eta_nodes[i], self.sigma2_nodes[j])
    }
}

/// Grid posterior with default σ² range and the informative prior.
pub fn posterior_grid<T: Real>(
    m: &MarkerSeries<T>,
    p: &PriorConfig<T>,
    n_eta: usize,
    n_sigma2: usize,
) -> Result<PosteriorGrid<T>> {
    posterior_grid_with(m, p, &GridSpec::new(n_eta, n_sigma2))
}

/// Posterior over a tensor grid: η nodes uniform in θ = arctan η over (a, b),
/// σ² nodes log-uniform over the σ² range. Cell log density is
/// log-likelihood plus log prior, normalised by log-sum-exp with cell areas.
pub fn posterior_grid_with<T: Real>(
    m: &MarkerSeries<T>,
    p: &PriorConfig<T>,
    spec: &GridSpec<T>,
) -> Result<PosteriorGrid<T>> {
    if spec.n_eta < 2 || spec.n_sigma2 < 2 {
        return Err(Error::domain("grid needs at least two nodes per axis"));
    }
    let (lo, hi) = match spec.sigma2_bounds {
        Some(b) => b,
        None => {
            let est = mle(m)?;
            if !(est.sigma2 > T::zero()) {
                return Err(Error::Numeric(
                    "maximum-likelihood sigma2 is zero; supply explicit sigma2 bounds".into(),
                ));
            }
            let factor = T::lit(100.0);
            (est.sigma2 / factor, est.sigma2 * factor)
        }
    };
    if !(lo > T::zero() && lo < hi && hi.is_finite()) {
        return Err(Error::domain(format!("invalid sigma2 bounds ({lo}, {hi})")));
    }

    let half = T::lit(0.5);
    let n_e = T::from_count(spec.n_eta);
    let theta_width = (p.b() - p.a()) / n_e;
    let eta_edges: Vec<T> = (0..=spec.n_eta)
        .map(|i| (p.a() + theta_width * T::from_count(i)).tan())
        .collect();
    let eta_nodes: Vec<T> = (0..spec.n_eta)
        .map(|i| (p.a() + theta_width * (T::from_count(i) + half)).tan())
        .collect();
    let eta_widths: Vec<T> = eta_edges.windows(2).map(|w| w[1] - w[0]).collect();

    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let step = (ln_hi - ln_lo) / T::from_count(spec.n_sigma2);
    let s_edges: Vec<T> = (0..=spec.n_sigma2)
        .map(|j| (ln_lo + step * T::from_count(j)).exp())
        .collect();
    let sigma2_nodes: Vec<T> = (0..spec.n_sigma2)
        .map(|j| (ln_lo + step * (T::from_count(j) + half)).exp())
        .collect();
    let sigma2_widths: Vec<T> = s_edges.windows(2).map(|w| w[1] - w[0]).collect();

    let log_density: Vec<T> = eta_nodes
        .par_iter()
        .flat_map_iter(|&eta| {
            let eta_prior = match spec.prior_mode {
                PriorMode::Informative => eta_prior_logpdf(eta, p),
                PriorMode::Flat => T::zero(),
            };
            sigma2_nodes.iter().map(move |&s2| {
                let w = WienerParams::new(eta, s2).expect("grid nodes are valid parameters");
                let prior = match spec.prior_mode {
                    PriorMode::Informative => eta_prior + sigma2_prior_logpdf(s2, eta, p),
                    PriorMode::Flat => T::zero(),
                };
                log_likelihood(&w, m) + prior
            })
        })
        .collect();

    PosteriorGrid::from_parts(
        eta_nodes,
        eta_widths,
        sigma2_nodes,
        sigma2_widths,
        log_density,
        true,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(t: &[f64], z: &[f64]) -> MarkerSeries<f64> {
        MarkerSeries::new(t.to_vec(), z.to_vec()).unwrap()
    }

    #[test]
    fn likelihood_with_increments_at_their_means() {
        let w = WienerParams::new(1.0, 1.0).unwrap();
        let m = series(&[1.0, 2.0], &[1.0, 2.0]);
        let v = log_likelihood(&w, &m);
        assert!((v + 1.837_877_066_409_345_5).abs() < 1e-12, "{v}");
        let w = WienerParams::new(0.5, 2.0).unwrap();
        let m = series(&[3.0], &[1.5]);
        let v = log_likelihood(&w, &m);
        assert!((v + 0.5 * (2.0 * std::f64::consts::PI * 3.0 * 2.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn likelihood_drift_maximiser_is_endpoint_slope() {
        let m = series(&[0.5, 1.2, 2.0, 4.0], &[0.3, 1.4, 1.1, 3.3]);
        let best = 3.3 / 4.0;
        let ll = |eta: f64| log_likelihood(&WienerParams::new(eta, 0.7).unwrap(), &m);
        for &d in &[1e-3, 1e-2, 0.1] {
            assert!(ll(best) > ll(best + d));
            assert!(ll(best) > ll(best - d));
        }
    }

    #[test]
    fn likelihood_is_additive_over_observation_blocks() {
        // Increments computed in one pass equal the sum of per-block terms.
        let w = WienerParams::new(0.8, 0.3).unwrap();
        let whole = series(&[1.0, 2.0, 3.5], &[0.7, 1.9, 2.2]);
        let first = series(&[1.0], &[0.7]);
        let rest = series(&[1.0, 2.5], &[1.9 - 0.7, 2.2 - 0.7]);
        let split = log_likelihood(&w, &first) + log_likelihood(&w, &rest);
        assert!((log_likelihood(&w, &whole) - split).abs() < 1e-12);
    }

    #[test]
    fn mle_closed_forms() {
        let e = mle(&series(&[1.0, 2.0], &[1.0, 2.0])).unwrap();
        assert_eq!((e.eta, e.sigma2), (1.0, 0.0));
        let e = mle(&series(&[1.0, 2.0], &[0.9, 2.1])).unwrap();
        assert!((e.eta - 1.05).abs() < 1e-15);
        assert!((e.sigma2 - 0.0225).abs() < 1e-15);
        let c = 3.0;
        let s = mle(&series(&[1.0, 2.0], &[0.9 * c, 2.1 * c])).unwrap();
        assert!((s.eta - c * e.eta).abs() < 1e-14);
        assert!((s.sigma2 - c * c * e.sigma2).abs() < 1e-14);
        assert!(matches!(
            mle(&series(&[1.0], &[1.0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn grid_is_normalised_and_inside_support() {
        let m = series(&[1.0, 2.0, 3.0, 4.0], &[0.9, 2.2, 2.8, 4.1]);
        let p = PriorConfig::default();
        let g = posterior_grid(&m, &p, 40, 30).unwrap();
        assert!(g.is_normalized());
        assert!((g.total_mass() - 1.0).abs() < 1e-10);
        let (lo, hi) = p.eta_support();
        assert!(g.eta_nodes().iter().all(|&e| e > lo && e < hi));
        assert_eq!(g.log_densities().len(), 40 * 30);
    }

    #[test]
    fn grid_rejects_bad_inputs() {
        let p = PriorConfig::default();
        let m = series(&[1.0, 2.0], &[1.0, 2.0]);
        assert!(matches!(
            posterior_grid(&m, &p, 10, 10),
            Err(Error::Numeric(_))
        ));
        let m = series(&[1.0, 2.0], &[0.9, 2.1]);
        assert!(posterior_grid(&m, &p, 1, 10).is_err());
        let mut spec = GridSpec::new(10, 10);
        spec.sigma2_bounds = Some((1.0, 0.5));
        assert!(posterior_grid_with(&m, &p, &spec).is_err());
        // grid nowhere near the likelihood: every cell underflows
        let far = series(&[1.0, 2.0], &[1e6, -1e6]);
        let mut spec = GridSpec::new(4, 4);
        spec.sigma2_bounds = Some((1e-300, 2e-300));
        assert!(matches!(
            posterior_grid_with(&far, &p, &spec),
            Err(Error::Numeric(_))
        ));
    }

    #[test]
    fn point_mass_grid() {
        let g = PosteriorGrid::point_mass(1.0, 1.0).unwrap();
        assert_eq!(g.total_mass(), 1.0);
        assert_eq!(g.posterior_mean(), (1.0, 1.0));
        assert!(PosteriorGrid::point_mass(-1.0, 1.0).is_err());
        assert!(PosteriorGrid::point_mass(1.0, 0.0).is_err());
    }

    #[test]
    fn from_parts_validation() {
        let ok = PosteriorGrid::from_parts(
            vec![1.0, 2.0],
            vec![1.0, 1.0],
            vec![0.5],
            vec![0.1],
            vec![0.0, -1.0],
            true,
        );
        assert!(ok.is_ok());
        assert!(PosteriorGrid::from_parts(
            vec![2.0, 1.0],
            vec![1.0, 1.0],
            vec![0.5],
            vec![0.1],
            vec![0.0, 0.0],
            true
        )
        .is_err());
        assert!(PosteriorGrid::from_parts(
            vec![1.0, 2.0],
            vec![1.0, 1.0],
            vec![0.5],
            vec![0.1],
            vec![0.0],
            true
        )
        .is_err());
        assert!(PosteriorGrid::from_parts(
            vec![1.0],
            vec![0.0],
            vec![0.5],
            vec![0.1],
            vec![0.0],
            true
        )
        .is_err());
        assert!(PosteriorGrid::from_parts(
            vec![1.0],
            vec![1.0],
            vec![0.5],
            vec![0.1],
            vec![f64::NAN],
            true
        )
        .is_err());
        let raw =
            PosteriorGrid::from_parts(vec![1.0], vec![1.0], vec![0.5], vec![0.1], vec![3.0], false)
                .unwrap();
        assert!(!raw.is_normalized());
    }

    #[test]
    fn grid_is_independent_of_worker_count() {
        let m = series(&[0.5, 1.0, 1.5, 2.0, 2.5], &[0.6, 0.9, 1.7, 2.0, 2.4]);
        let p = PriorConfig::default();
        let run = |n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap()
                .install(|| posterior_grid(&m, &p, 33, 17).unwrap())
        };
        assert_eq!(run(1), run(6));
    }
}
