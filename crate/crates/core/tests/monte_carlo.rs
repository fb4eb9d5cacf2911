//! Simulated estimators against closed forms.

use hazard_core::distcore::{ig_cdf, mixture_lifetime_cdf, reflection_hitting_cdf};
use hazard_core::pathsim::{
    mc_dependent_competing_survival, mc_exponential_threshold_hitting, mc_fixed_threshold_hitting,
    mc_trauma_survival, running_max, sample_correlated_bm_pair, sample_gamma_path,
    sample_wiener_path,
};
use hazard_core::riskmodels::trauma_gamma_closed;
use hazard_core::{CorrelationRho, McEstimate, PathConfig, Quadrature, WienerParams};

fn within(e: McEstimate, truth: f64, allowance: f64) -> bool {
    (e.value - truth).abs() <= 3.0 * e.std_err + allowance
}

#[test]
fn wiener_terminal_moments() {
    let w = WienerParams::new(0.7, 0.5).unwrap();
    let cfg = PathConfig::new(0.05, 40, 20_000, 11).unwrap();
    let terminal: Vec<f64> = (0..cfg.n_paths())
        .map(|i| sample_wiener_path(&w, &cfg, i).unwrap().terminal())
        .collect();
    let mean = McEstimate::from_samples(&terminal);
    assert!(within(mean, 1.4, 0.0), "{mean:?}");
    let sq: Vec<f64> = terminal.iter().map(|z| (z - 1.4).powi(2)).collect();
    let var = McEstimate::from_samples(&sq);
    assert!(within(var, 1.0, 0.0), "{var:?}");
}

#[test]
fn running_max_dominates_path() {
    let w = WienerParams::new(-0.5, 1.0).unwrap();
    let cfg = PathConfig::new(0.01, 200, 50, 2).unwrap();
    for i in 0..cfg.n_paths() {
        let p = sample_wiener_path(&w, &cfg, i).unwrap();
        let m = running_max(&p);
        assert_eq!(m.times(), p.times());
        for (j, (&z, &h)) in p.values().iter().zip(m.values()).enumerate() {
            assert!(h >= z && h >= 0.0);
            if j > 0 {
                assert!(h >= m.values()[j - 1]);
            }
        }
    }
}

#[test]
fn gamma_moments_and_monotone_paths() {
    let cfg = PathConfig::new(0.1, 20, 20_000, 5).unwrap();
    let mut terminal = Vec::with_capacity(cfg.n_paths());
    for i in 0..cfg.n_paths() {
        let p = sample_gamma_path(&cfg, i).unwrap();
        assert!(p.values().windows(2).all(|v| v[1] >= v[0]));
        terminal.push(p.terminal());
    }
    let mean = McEstimate::from_samples(&terminal);
    assert!(within(mean, 2.0, 0.0), "{mean:?}");
    let sq: Vec<f64> = terminal.iter().map(|h| (h - 2.0).powi(2)).collect();
    let var = McEstimate::from_samples(&sq);
    assert!(within(var, 2.0, 0.0), "{var:?}");
}

#[test]
fn correlated_pair_covariance() {
    for &rho in &[0.0, 0.5, -0.8] {
        let cfg = PathConfig::new(0.25, 4, 20_000, 9).unwrap();
        let products: Vec<f64> = (0..cfg.n_paths())
            .map(|i| {
                let (a, b) =
                    sample_correlated_bm_pair(CorrelationRho::new(rho).unwrap(), &cfg, i).unwrap();
                a.terminal() * b.terminal()
            })
            .collect();
        let cov = McEstimate::from_samples(&products);
        assert!(within(cov, rho, 0.0), "rho {rho}: {cov:?}");
    }
}

#[test]
fn fixed_threshold_hitting_matches_inverse_gaussian() {
    let w = WienerParams::new(1.0, 1.0).unwrap();
    let cfg = PathConfig::new(1e-4, 10_000, 20_000, 1).unwrap();
    for &x in &[1.0, 2.0] {
        let e = mc_fixed_threshold_hitting(&w, x, 1.0, &cfg).unwrap();
        let exact = ig_cdf(1.0, x, &w).unwrap();
        assert!(within(e, exact, 0.01), "x {x}: {e:?} vs {exact}");
        // The discrete maximum can only miss crossings.
        assert!(e.value < exact + 3.0 * e.std_err);
    }
}

#[test]
fn driftless_hitting_matches_reflection() {
    let w = WienerParams::new(0.0, 2.0).unwrap();
    let cfg = PathConfig::new(1e-4, 10_000, 20_000, 4).unwrap();
    let e = mc_fixed_threshold_hitting(&w, 1.5, 1.0, &cfg).unwrap();
    let exact = reflection_hitting_cdf(1.0, 1.5, 2.0).unwrap();
    assert!(within(e, exact, 0.01), "{e:?} vs {exact}");
}

#[test]
fn exponential_threshold_hitting_matches_mixture() {
    let w = WienerParams::new(1.0, 1.0).unwrap();
    let q = Quadrature::default();
    let cfg = PathConfig::covering(1e-4, 5.0, 20_000, 8).unwrap();
    for &t in &[0.5, 1.0, 2.0, 5.0] {
        let e = mc_exponential_threshold_hitting(&w, t, &cfg).unwrap();
        let exact = mixture_lifetime_cdf(t, &w, &q).unwrap();
        assert!(within(e, exact, 0.01), "t {t}: {e:?} vs {exact}");
    }
}

#[test]
fn trauma_matches_closed_form() {
    let cfg = PathConfig::covering(1e-3, 2.0, 20_000, 3).unwrap();
    for &t in &[0.5, 1.0, 2.0] {
        let e = mc_trauma_survival(t, f64::INFINITY, &cfg).unwrap();
        let exact = trauma_gamma_closed(t).unwrap();
        assert!(within(e, exact, 0.01), "t {t}: {e:?} vs {exact}");
    }
    // A finite degradation threshold can only lower survival.
    let capped = mc_trauma_survival(1.0, 0.5, &cfg).unwrap();
    let free = mc_trauma_survival(1.0, f64::INFINITY, &cfg).unwrap();
    assert!(capped.value < free.value);
}

#[test]
fn competing_survival_rises_with_correlation() {
    let cfg = PathConfig::new(1e-3, 1000, 20_000, 6).unwrap();
    let values: Vec<McEstimate> = [0.0, 0.5, 1.0]
        .iter()
        .map(|&rho| {
            mc_dependent_competing_survival(CorrelationRho::new(rho).unwrap(), 1.0, &cfg).unwrap()
        })
        .collect();
    for v in values.windows(2) {
        assert!(v[1].value > v[0].value, "{values:?}");
    }
    // ρ = 1: both risks are one Brownian maximum, P(M ≤ X) = 2E[Φ(X)] − 1.
    assert!(
        within(values[2], 0.523_156_583_730_247, 0.02),
        "{:?}",
        values[2]
    );
    assert!(
        within(values[0], 0.379_074_599_932_404, 0.02),
        "{:?}",
        values[0]
    );
}
