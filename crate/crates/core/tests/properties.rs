use proptest::prelude::*;

use hazard_core::distcore::{ig_cdf, ig_pdf, std_normal_cdf};
use hazard_core::inference::{eta_prior_logpdf, threshold_posterior};
use hazard_core::pathsim::running_max;
use hazard_core::riskmodels::{additive_survival, max_rule_survival, survival_bounds};
use hazard_core::{log_sum_exp, HazardCurve, MarkerSeries, PriorConfig, SamplePath, WienerParams};

proptest! {
    #[test]
    fn ig_cdf_is_a_distribution(
        x in 0.01f64..20.0,
        eta in 0.01f64..5.0,
        sigma2 in 0.01f64..10.0,
        t in 0.0f64..50.0,
        dt in 0.0f64..5.0,
    ) {
        let w = WienerParams::new(eta, sigma2).unwrap();
        let f = ig_cdf(t, x, &w).unwrap();
        let g = ig_cdf(t + dt, x, &w).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!(g >= f - 1e-12);
        prop_assert!(ig_pdf(t, x, &w).unwrap() >= 0.0);
        // A higher threshold is reached later.
        prop_assert!(ig_cdf(t, x * 1.5, &w).unwrap() <= f + 1e-12);
    }

    #[test]
    fn normal_cdf_symmetry(z in -30.0f64..30.0) {
        let s = std_normal_cdf(z).unwrap() + std_normal_cdf(-z).unwrap();
        prop_assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sandwich_holds(
        params in prop::collection::vec((0.0f64..3.0, 0.2f64..3.0), 1..6),
        t in 0.0f64..4.0,
    ) {
        let hs: Vec<HazardCurve> = params.iter().map(|&(c, p)| HazardCurve::power_law(c, p).unwrap()).collect();
        let add = additive_survival(&hs, t).unwrap();
        let max = max_rule_survival(&hs, t).unwrap();
        let b = survival_bounds(&hs, t).unwrap();
        prop_assert!(add <= max);
        prop_assert_eq!((b.lower, b.upper), (add, max));
    }

    #[test]
    fn running_max_invariants(steps in prop::collection::vec(-2.0f64..2.0, 1..50)) {
        let times: Vec<f64> = (0..=steps.len()).map(|i| i as f64).collect();
        let mut values = vec![0.0];
        for s in &steps {
            values.push(values.last().unwrap() + s);
        }
        let p = SamplePath::new(times, values.clone()).unwrap();
        let m = running_max(&p);
        for (j, &h) in m.values().iter().enumerate() {
            let expect = values[..=j].iter().cloned().fold(0.0, f64::max);
            prop_assert_eq!(h, expect);
        }
    }

    #[test]
    fn log_sum_exp_bounds(v in prop::collection::vec(-700.0f64..700.0, 1..20)) {
        let l = log_sum_exp(v.iter().copied());
        let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(l >= max - 1e-12);
        prop_assert!(l <= max + (v.len() as f64).ln() + 1e-12);
    }

    #[test]
    fn threshold_shift_is_last_value(
        incs in prop::collection::vec((0.01f64..1.0, -1.0f64..1.0), 1..20),
        c in 0.0f64..10.0,
    ) {
        let mut t = 0.0;
        let mut z = 0.0;
        let (mut ts, mut zs) = (Vec::new(), Vec::new());
        for (dt, dz) in incs {
            t += dt;
            z += dz;
            ts.push(t);
            zs.push(z);
        }
        let m = MarkerSeries::new(ts, zs).unwrap();
        let xp = threshold_posterior(&m);
        prop_assert_eq!(xp.shift(), z.max(0.0));
        prop_assert!((xp.survival(xp.shift() + c) - (-c).exp()).abs() <= 1e-12);
    }

    #[test]
    fn eta_prior_vanishes_off_support(eta in 0.0f64..10.0) {
        let p = PriorConfig::default();
        let (lo, hi) = p.eta_support();
        let l = eta_prior_logpdf(eta, &p);
        if eta <= lo || eta >= hi {
            prop_assert_eq!(l, f64::NEG_INFINITY);
        } else {
            prop_assert!(l.is_finite());
        }
    }
}
