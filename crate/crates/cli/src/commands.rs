//! Command bodies. Each returns the rendered artifact and a one-line summary.

use std::path::Path;

use rayon::prelude::*;

use hazard_core::distcore::{ig_cdf, mixture_lifetime_cdf};
use hazard_core::inference::{
    mle, posterior_grid_with, GridSpec, PriorMode, ResidualLife, ShiftRule,
};
use hazard_core::pathsim::{
    mc_dependent_competing_survival, mc_exponential_threshold_hitting, mc_fixed_threshold_hitting,
    mc_trauma_survival, running_max, sample_correlated_bm_pair, sample_gamma_path,
    sample_wiener_path,
};
use hazard_core::riskmodels::{
    additive_survival, gumbel_survival, max_rule_survival, survival_bounds, trauma_gamma_closed,
};
use hazard_core::{
    CorrelationRho, GumbelTheta, HazardCurve, McEstimate, PathConfig, PriorConfig, Quadrature,
    ThresholdPosterior, WienerParams,
};

use crate::args::{
    Common, Figure1Args, FitArgs, PredictArgs, PriorChoice, Process, SimulateArgs, SurvivalArgs,
    SurvivalModel,
};
use crate::artifact::{
    DataBlock, GridBlock, PosteriorFile, PriorBlock, SummaryBlock, ThresholdBlock,
    POSTERIOR_FORMAT, POSTERIOR_VERSION,
};
use crate::error::{CliError, CliResult};
use crate::table::{parse_grid, read_hazard_table, read_markers, Table};

pub struct Output {
    pub body: String,
    pub summary: String,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `power:c,p` or `table:<path>`.
pub fn parse_hazard(spec: &str) -> CliResult<HazardCurve> {
    if let Some(rest) = spec.strip_prefix("power:") {
        let parts: Vec<&str> = rest.split(',').collect();
        let nums: Vec<f64> = parts
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| usage(format!("hazard `{spec}`: expected power:c,p")))?;
        if nums.len() != 2 {
            return Err(usage(format!("hazard `{spec}`: expected power:c,p")));
        }
        Ok(HazardCurve::power_law(nums[0], nums[1])?)
    } else if let Some(path) = spec.strip_prefix("table:") {
        read_hazard_table(Path::new(path))
    } else {
        Err(usage(format!(
            "hazard `{spec}`: expected power:c,p or table:<csv>"
        )))
    }
}

pub fn survival(a: &SurvivalArgs) -> CliResult<Output> {
    let ts = parse_grid(&a.t)?;
    let hazards = a
        .hazards
        .iter()
        .map(|s| parse_hazard(s))
        .collect::<CliResult<Vec<_>>>()?;
    let needs_hazards = matches!(
        a.model,
        SurvivalModel::Additive
            | SurvivalModel::Gumbel
            | SurvivalModel::Maxrule
            | SurvivalModel::Bounds
    );
    if needs_hazards && hazards.is_empty() {
        return Err(usage("this model needs at least one --hazard"));
    }
    if !needs_hazards && !hazards.is_empty() {
        return Err(usage(
            "--hazard is only used by additive, gumbel, maxrule and bounds",
        ));
    }

    let mut table = if a.model == SurvivalModel::Bounds {
        Table::new(["t", "lower", "upper"])
    } else {
        Table::new(["t", "survival"])
    };
    match a.model {
        SurvivalModel::Additive => {
            for &t in &ts {
                table.push(vec![t, additive_survival(&hazards, t)?]);
            }
        }
        SurvivalModel::Maxrule => {
            for &t in &ts {
                table.push(vec![t, max_rule_survival(&hazards, t)?]);
            }
        }
        SurvivalModel::Bounds => {
            for &t in &ts {
                let b = survival_bounds(&hazards, t)?;
                table.push(vec![t, b.lower, b.upper]);
            }
        }
        SurvivalModel::Gumbel => {
            let [h1, h2] = hazards.as_slice() else {
                return Err(usage("gumbel needs exactly two --hazard curves"));
            };
            let theta = GumbelTheta::new(a.theta.ok_or_else(|| usage("gumbel needs --theta"))?)?;
            for &t in &ts {
                table.push(vec![t, gumbel_survival(h1, h2, theta, t)?]);
            }
        }
        SurvivalModel::TraumaClosed => {
            for &t in &ts {
                table.push(vec![t, trauma_gamma_closed(t)?]);
            }
        }
        SurvivalModel::Ig => {
            let x = a.x.ok_or_else(|| usage("ig needs --x"))?;
            let w = WienerParams::new(a.eta, a.sigma2)?;
            for &t in &ts {
                table.push(vec![t, 1.0 - ig_cdf(t, x, &w)?]);
            }
        }
        SurvivalModel::Mixture => {
            let w = WienerParams::new(a.eta, a.sigma2)?;
            let q = Quadrature::default();
            let values = ts
                .par_iter()
                .map(|&t| mixture_lifetime_cdf(t, &w, &q).map(|f| 1.0 - f))
                .collect::<Result<Vec<_>, _>>()?;
            for (&t, s) in ts.iter().zip(values) {
                table.push(vec![t, s]);
            }
        }
    }
    Ok(Output {
        summary: format!("survival: {} rows", table.rows().len()),
        body: table.render(),
    })
}

fn path_config(c: &Common, a: &SimulateArgs, horizon: f64) -> CliResult<PathConfig> {
    if !(c.dt > 0.0 && c.dt.is_finite()) {
        return Err(usage(format!("--dt must be positive, got {}", c.dt)));
    }
    match a.steps {
        Some(steps) => {
            if (steps as f64) * c.dt < horizon * (1.0 - 1e-9) {
                return Err(usage(format!(
                    "{steps} steps of {} cover {} < horizon {horizon}",
                    c.dt,
                    steps as f64 * c.dt
                )));
            }
            Ok(PathConfig::new(c.dt, steps, c.paths, c.seed)?)
        }
        None => Ok(PathConfig::covering(c.dt, horizon, c.paths, c.seed)?),
    }
}

/// Times, values, and the partner path's values for correlated pairs.
type DumpedPath = (Vec<f64>, Vec<f64>, Option<Vec<f64>>);

fn dump_paths(c: &Common, a: &SimulateArgs) -> CliResult<Output> {
    if a.t.is_some() {
        return Err(usage("path dumps take --horizon, not --t"));
    }
    let horizon = match (a.horizon, a.steps) {
        (Some(h), _) => h,
        (None, Some(steps)) => steps as f64 * c.dt,
        (None, None) => 1.0,
    };
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(usage(format!("--horizon must be positive, got {horizon}")));
    }
    let cfg = path_config(c, a, horizon)?;
    let w = WienerParams::new(a.eta, a.sigma2)?;
    let mut table = if a.process == Process::CorrBm {
        Table::new(["path_index", "time", "value1", "value2"])
    } else {
        Table::new(["path_index", "time", "value"])
    };
    let rho = CorrelationRho::new(a.rho)?;
    let paths = (0..cfg.n_paths())
        .into_par_iter()
        .map(|i| -> CliResult<DumpedPath> {
            Ok(match a.process {
                Process::Wiener => {
                    let p = sample_wiener_path(&w, &cfg, i)?;
                    (p.times().to_vec(), p.values().to_vec(), None)
                }
                Process::Wienermax => {
                    let p = running_max(&sample_wiener_path(&w, &cfg, i)?);
                    (p.times().to_vec(), p.values().to_vec(), None)
                }
                Process::Gamma => {
                    let p = sample_gamma_path(&cfg, i)?;
                    (p.times().to_vec(), p.values().to_vec(), None)
                }
                Process::CorrBm => {
                    let (p, q) = sample_correlated_bm_pair(rho, &cfg, i)?;
                    (
                        p.times().to_vec(),
                        p.values().to_vec(),
                        Some(q.values().to_vec()),
                    )
                }
                _ => unreachable!("estimator processes are not dumped"),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    for (i, (times, first, second)) in paths.into_iter().enumerate() {
        for (j, (&t, &v)) in times.iter().zip(&first).enumerate() {
            let mut row = vec![i as f64, t, v];
            if let Some(s) = &second {
                row.push(s[j]);
            }
            table.push(row);
        }
    }
    Ok(Output {
        summary: format!(
            "simulate: {} paths, {} steps each",
            cfg.n_paths(),
            cfg.n_steps()
        ),
        body: table.render(),
    })
}

pub fn simulate(c: &Common, a: &SimulateArgs) -> CliResult<Output> {
    if c.paths == 0 {
        return Err(usage("--paths must be positive"));
    }
    if a.process.is_path_dump() {
        return dump_paths(c, a);
    }
    if a.horizon.is_some() {
        return Err(usage("estimators take --t, not --horizon"));
    }
    let ts = parse_grid(
        a.t.as_deref()
            .ok_or_else(|| usage("this process needs --t"))?,
    )?;
    let cfg = path_config(c, a, *ts.last().expect("grid is nonempty"))?;
    let estimate = |t: f64| -> CliResult<McEstimate> {
        Ok(match a.process {
            Process::Trauma => mc_trauma_survival(t, a.threshold, &cfg)?,
            Process::Competing => {
                mc_dependent_competing_survival(CorrelationRho::new(a.rho)?, t, &cfg)?
            }
            Process::IgHitting => {
                let x = a.x.ok_or_else(|| usage("ig-hitting needs --x"))?;
                mc_fixed_threshold_hitting(&WienerParams::new(a.eta, a.sigma2)?, x, t, &cfg)?
                    .complement()
            }
            Process::ExpHitting => {
                mc_exponential_threshold_hitting(&WienerParams::new(a.eta, a.sigma2)?, t, &cfg)?
                    .complement()
            }
            _ => unreachable!("path processes are dumped"),
        })
    };
    let mut table = Table::new(["t", "survival", "std_err"]);
    for &t in &ts {
        if t == 0.0 {
            // Every item is alive at time zero.
            table.push(vec![0.0, 1.0, 0.0]);
            continue;
        }
        let e = estimate(t)?;
        table.push(vec![t, e.value, e.std_err]);
    }
    Ok(Output {
        summary: format!(
            "simulate: {} paths, dt {}, {} time points",
            cfg.n_paths(),
            cfg.dt(),
            ts.len()
        ),
        body: table.render(),
    })
}

pub fn fit(a: &FitArgs) -> CliResult<Output> {
    let m = read_markers(&a.markers)?;
    if m.len() < 2 {
        return Err(usage(format!(
            "{} has {} observation(s); at least two are needed to identify sigma2",
            a.markers.display(),
            m.len()
        )));
    }
    let prior = PriorConfig::new(a.a, a.b, a.beta_p, a.beta_q, a.delta)?;
    let mut spec = GridSpec::new(a.n_eta, a.n_sigma2);
    spec.prior_mode = match a.prior {
        PriorChoice::Informative => PriorMode::Informative,
        PriorChoice::Flat => PriorMode::Flat,
    };
    spec.sigma2_bounds = match (a.sigma2_min, a.sigma2_max) {
        (None, None) => None,
        (Some(lo), Some(hi)) => Some((lo, hi)),
        _ => return Err(usage("--sigma2-min and --sigma2-max go together")),
    };
    let est = mle(&m)?;
    let grid = posterior_grid_with(&m, &prior, &spec)?;
    let rule = if a.use_max_shift {
        ShiftRule::RunningMax
    } else {
        ShiftRule::LastValue
    };
    let xp = ThresholdPosterior::from_markers(&m, rule);
    let (eta_mean, sigma2_mean) = grid.posterior_mean();
    let (eta_mode, sigma2_mode) = grid.mode();
    let file = PosteriorFile {
        format: POSTERIOR_FORMAT.into(),
        version: POSTERIOR_VERSION,
        prior: PriorBlock {
            a: a.a,
            b: a.b,
            beta_p: a.beta_p,
            beta_q: a.beta_q,
            delta: a.delta,
            mode: match a.prior {
                PriorChoice::Informative => "informative",
                PriorChoice::Flat => "flat",
            }
            .into(),
        },
        data: DataBlock {
            observations: m.len(),
            last_time: m.last_time(),
            last_value: m.last_value(),
            max_value: m.max_value(),
        },
        threshold: ThresholdBlock {
            rule: if a.use_max_shift {
                "running-max"
            } else {
                "last-value"
            }
            .into(),
            shift: xp.shift(),
        },
        grid: GridBlock::from_grid(&grid),
        summary: SummaryBlock {
            eta_mean,
            sigma2_mean,
            eta_mode,
            sigma2_mode,
            mle_eta: est.eta,
            mle_sigma2: est.sigma2,
            shift: xp.shift(),
            last_time: m.last_time(),
        },
    };
    Ok(Output {
        summary: format!(
            "fit: {} observations, posterior mean eta {eta_mean:.6}, sigma2 {sigma2_mean:.6}",
            m.len()
        ),
        body: file.render(),
    })
}

pub fn predict(a: &PredictArgs) -> CliResult<Output> {
    let file = PosteriorFile::read(&a.posterior)?;
    let grid = file.grid.to_grid()?;
    let xp = file.threshold()?;
    let mut us = parse_grid(&a.u)?;
    if us[0] != 0.0 {
        us.insert(0, 0.0);
    }
    let residual = ResidualLife::new(file.data.last_time, &grid, xp, Quadrature::default())?;
    let mut table = Table::new(["u", "residual_survival"]);
    for &u in &us {
        table.push(vec![u, residual.survival(u)?]);
    }
    Ok(Output {
        summary: format!(
            "predict: P(T > t_k) = {:.6} at t_k = {}",
            residual.denominator(),
            file.data.last_time
        ),
        body: table.render(),
    })
}

pub fn figure1(a: &Figure1Args) -> CliResult<Output> {
    if !(a.t_step > 0.0 && a.t_max >= a.t_step && a.t_max.is_finite()) {
        return Err(usage("need 0 < --t-step <= --t-max"));
    }
    let w = WienerParams::new(a.eta, a.sigma2)?;
    let q = Quadrature::default();
    let n = (a.t_max / a.t_step + 1e-9).floor() as usize;
    let rows = (1..=n)
        .into_par_iter()
        .map(|i| -> CliResult<Vec<f64>> {
            let t = a.t_step * i as f64;
            let mut row = vec![t];
            for x in 1..=5 {
                row.push(ig_cdf(t, x as f64, &w)?);
            }
            row.push(mixture_lifetime_cdf(t, &w, &q)?);
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut table = Table::new(["t", "F_x1", "F_x2", "F_x3", "F_x4", "F_x5", "F_mixture"]);
    for row in rows {
        table.push(row);
    }
    Ok(Output {
        summary: format!("figure1: {n} rows"),
        body: table.render(),
    })
}
