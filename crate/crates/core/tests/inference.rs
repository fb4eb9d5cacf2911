//! Posterior fitting and prediction on synthetic marker data.

use hazard_core::distcore::mixture_lifetime_cdf;
use hazard_core::inference::{
    mle, posterior_grid, posterior_grid_with, predictive_survival, residual_life_survival,
    threshold_posterior, GridSpec, PriorMode, ResidualLife,
};
use hazard_core::pathsim::sample_wiener_path;
use hazard_core::{
    MarkerSeries, PathConfig, PosteriorGrid, PriorConfig, Quadrature, ThresholdPosterior,
    WienerParams,
};

fn synthetic(eta: f64, sigma2: f64, k: usize, dt: f64, seed: u64) -> MarkerSeries {
    let cfg = PathConfig::new(dt, k, 1, seed).unwrap();
    let p = sample_wiener_path(&WienerParams::new(eta, sigma2).unwrap(), &cfg, 0).unwrap();
    MarkerSeries::new(p.times()[1..].to_vec(), p.values()[1..].to_vec()).unwrap()
}

/// True when `v` lies in cell `k` or one of its neighbours; cells are
/// contiguous, so edges follow from the lower grid bound and the widths.
fn within_one_cell(first_edge: f64, widths: &[f64], k: usize, v: f64) -> bool {
    let mut edges = vec![first_edge];
    for w in widths {
        edges.push(edges.last().unwrap() + w);
    }
    let lo = edges[k.saturating_sub(1)];
    let hi = edges[(k + 2).min(widths.len())];
    v >= lo - 1e-12 && v <= hi + 1e-12
}

#[test]
fn flat_prior_argmax_tracks_mle() {
    let p = PriorConfig::default();
    for seed in 0..5 {
        let m = synthetic(1.0, 0.04, 50, 0.1, seed);
        let est = mle(&m).unwrap();
        for n in [64, 128] {
            let mut spec = GridSpec::new(n, n);
            spec.prior_mode = PriorMode::Flat;
            let g = posterior_grid_with(&m, &p, &spec).unwrap();
            let (i, j) = g.argmax();
            assert!(
                within_one_cell(p.eta_support().0, g.eta_widths(), i, est.eta),
                "seed {seed} n {n}: eta {} vs {}",
                g.eta_nodes()[i],
                est.eta
            );
            assert!(
                within_one_cell(est.sigma2 / 100.0, g.sigma2_widths(), j, est.sigma2),
                "seed {seed} n {n}: sigma2 {} vs {}",
                g.sigma2_nodes()[j],
                est.sigma2
            );
        }
    }
}

#[test]
fn informative_posterior_concentrates_near_truth() {
    let p = PriorConfig::default();
    let m = synthetic(1.0, 0.04, 400, 0.1, 7);
    let g = posterior_grid(&m, &p, 64, 64).unwrap();
    let (eta, sigma2) = g.posterior_mean();
    assert!((eta - 1.0).abs() < 0.1, "{eta}");
    assert!((sigma2 - 0.04).abs() < 0.01, "{sigma2}");
    assert!((g.total_mass() - 1.0).abs() < 1e-9);
}

#[test]
fn single_cell_prediction_matches_mixture_ratio() {
    let w = WienerParams::new(1.0, 1.0).unwrap();
    let q = Quadrature::default();
    let g = PosteriorGrid::point_mass(1.0, 1.0).unwrap();
    let xp = ThresholdPosterior::new(0.0).unwrap();
    let m = MarkerSeries::new(vec![0.5, 1.0], vec![-0.2, -0.1]).unwrap();
    assert_eq!(threshold_posterior(&m).shift(), 0.0);
    let denom = 1.0 - mixture_lifetime_cdf(1.0, &w, &q).unwrap();
    assert!((predictive_survival(1.0, &g, &xp, &q).unwrap() - denom).abs() < 1e-9);
    for &u in &[0.0, 0.25, 1.0, 3.0] {
        let direct = (1.0 - mixture_lifetime_cdf(1.0 + u, &w, &q).unwrap()) / denom;
        let r = residual_life_survival(u, &m, &g, &xp, &q).unwrap();
        assert!((r - direct).abs() < 1e-6, "u {u}: {r} vs {direct}");
    }
}

#[test]
fn residual_life_curve_from_fitted_posterior() {
    let m = synthetic(1.0, 0.04, 50, 0.1, 2);
    let g = posterior_grid(&m, &PriorConfig::default(), 24, 24).unwrap();
    let xp = threshold_posterior(&m);
    let r = ResidualLife::new(m.last_time(), &g, xp, Quadrature::default()).unwrap();
    assert_eq!(r.survival(0.0).unwrap(), 1.0);
    let mut prev = 1.0;
    for k in 1..=20 {
        let s = r.survival(0.25 * k as f64).unwrap();
        assert!(s <= prev && s >= 0.0, "u {}: {s} > {prev}", 0.25 * k as f64);
        prev = s;
    }
    assert_eq!(r.survival(f64::INFINITY).unwrap(), 0.0);
    assert!(r.survival(-1.0).is_err());
}

#[test]
fn threshold_posterior_is_exact() {
    let m = MarkerSeries::new(vec![1.0, 2.0, 3.0], vec![0.3, 1.7, 1.2]).unwrap();
    let xp = threshold_posterior(&m);
    for &c in &[0.5, 1.0, 2.0] {
        assert!((xp.survival(1.2 + c) - (-c).exp()).abs() <= 1e-12);
    }
}
