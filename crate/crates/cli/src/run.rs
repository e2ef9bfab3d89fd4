//! Convergence experiments: evaluate the selected F_N family on a
//! deterministic grid, record sup errors against the limit, the analytic
//! bound where one applies, and the weighted-norm error.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use cliffosc::ck::monogenic_hyper;
use cliffosc::clifford::{Multivector, Paravector};
use cliffosc::grid::ball_grid;
use cliffosc::slice::{exp_paravector, SliceSeries};
use cliffosc::superosc::{
    error_bound_slice, eval_fn_slice, MonogenicFn, Setting, SuperoscSpec,
};
use cliffosc::superosc::node_moments;
use cliffosc::supershift::{
    moment_fueter_series, moment_slice_series, multifreq_exponent,
    supershift_multifreq_monogenic_with, supershift_multifreq_slice_with, EntireMonogenicFn,
    EntireSliceFn, FrequencyProfile,
};

use crate::config::{ExperimentConfig, ProfileSource, SettingKind, TargetKind};
use crate::HarnessError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub sup_error: f64,
    pub bound: Option<f64>,
    pub a1_error: f64,
    pub wall_ms: u64,
}

type PointFn = Box<dyn Fn(&Paravector<f64>) -> Result<Multivector<f64>, HarnessError> + Sync>;

fn load_taylor_coeffs(config: &ExperimentConfig) -> Result<Vec<Multivector<f64>>, HarnessError> {
    let path = config.taylor_file.as_deref().ok_or_else(|| HarnessError::InvalidConfig {
        field: "taylor_file".into(),
        reason: "missing".into(),
    })?;
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
        path: path.to_string(),
        source: e,
    })?;
    let raw: Vec<Vec<f64>> = serde_json::from_str(&text).map_err(|e| HarnessError::InvalidConfig {
        field: "taylor_file".into(),
        reason: format!("parse error: {e}"),
    })?;
    let dim = config.n;
    raw.into_iter()
        .enumerate()
        .map(|(s, row)| {
            if row.len() != 1 << dim {
                return Err(HarnessError::InvalidConfig {
                    field: "taylor_file".into(),
                    reason: format!("degree {s}: expected {} blade coefficients, got {}", 1 << dim, row.len()),
                });
            }
            Ok(Multivector::from_coeffs(dim, row))
        })
        .collect()
}

pub fn build_profile(source: &ProfileSource, n: usize) -> Result<FrequencyProfile, HarnessError> {
    match source {
        ProfileSource::Named(name) => match name.as_str() {
            "identity" => Ok(FrequencyProfile::identity(n)),
            "quadratic" => Ok(FrequencyProfile::monomial(n, 2)),
            "cubic" => Ok(FrequencyProfile::monomial(n, 3)),
            other => Err(HarnessError::InvalidConfig {
                field: "profile".into(),
                reason: format!("unknown profile `{other}` (expected identity|quadratic|cubic or rows)"),
            }),
        },
        ProfileSource::Rows(rows) => {
            if rows.len() != n + 1 {
                return Err(HarnessError::InvalidConfig {
                    field: "profile".into(),
                    reason: format!("need {} component rows, got {}", n + 1, rows.len()),
                });
            }
            Ok(FrequencyProfile::new(rows.clone()))
        }
    }
}

/// The per-N evaluator and its N-independent limit for a config.
struct Family {
    limit: PointFn,
    make_fn: Box<dyn Fn(usize) -> Result<PointFn, HarnessError>>,
    /// Analytic pointwise bound where the paper provides one.
    bound: Option<Box<dyn Fn(usize, &Paravector<f64>) -> f64 + Sync>>,
}

fn build_family(config: &ExperimentConfig) -> Result<Family, HarnessError> {
    let n = config.n;
    let a = config.a;
    let trunc = config.effective_trunc();
    match config.setting {
        SettingKind::Slice => {
            let limit: PointFn =
                Box::new(move |x| Ok(exp_paravector(&x.scale(&a)).embed()));
            let make_fn = Box::new(move |big_n: usize| {
                let spec = SuperoscSpec::prototype(n, big_n, a, Setting::Slice);
                let f: PointFn = Box::new(move |x| Ok(eval_fn_slice(&spec, x)?));
                Ok(f)
            });
            let bound: Box<dyn Fn(usize, &Paravector<f64>) -> f64 + Sync> =
                Box::new(move |big_n, x| error_bound_slice(big_n, a, x));
            Ok(Family {
                limit,
                make_fn,
                bound: Some(bound),
            })
        }
        SettingKind::Monogenic => {
            let e_limit = monogenic_hyper(n, a, trunc, cliffosc::ck::HyperKind::Exp)?;
            let limit: PointFn = Box::new(move |x| Ok(e_limit.eval(x)?));
            let make_fn = Box::new(move |big_n: usize| {
                let spec = SuperoscSpec::prototype(n, big_n, a, Setting::Monogenic);
                let f = MonogenicFn::build(&spec, trunc)?;
                let g: PointFn = Box::new(move |x| Ok(f.eval(x)?));
                Ok(g)
            });
            Ok(Family {
                limit,
                make_fn,
                bound: None,
            })
        }
        SettingKind::SupershiftSlice => {
            let g = match config.target {
                TargetKind::Exp => EntireSliceFn::exp(n),
                TargetKind::TaylorFile => {
                    EntireSliceFn::from_series(SliceSeries::new(n, load_taylor_coeffs(config)?))
                }
            };
            let profile = config
                .profile
                .as_ref()
                .map(|p| build_profile(p, n))
                .transpose()?;
            let limit_g = g.clone();
            let limit_profile = profile.clone();
            let limit: PointFn = Box::new(move |x| {
                Ok(match &limit_profile {
                    None => limit_g.eval(&x.scale(&a), 1e-9)?,
                    Some(p) => limit_g.eval(&multifreq_exponent(p, a, x), 1e-9)?,
                })
            });
            let make_fn = Box::new(move |big_n: usize| {
                let spec = SuperoscSpec::prototype(n, big_n, a, Setting::Slice);
                // the moment path keeps the band-limited sum evaluable at
                // large N; uniform monomial profiles fold into it
                let freq_pow = match &profile {
                    None => Some(1),
                    Some(p) => p.uniform_monomial_power(),
                };
                if let Some(p) = freq_pow {
                    let moments = node_moments(&spec, p * g.series().trunc_degree())?;
                    let series = moment_slice_series(&g, &moments, p);
                    let f: PointFn = Box::new(move |x| Ok(series.eval(x)));
                    return Ok(f);
                }
                let nodes = spec.nodes()?;
                let zs: Vec<Multivector<f64>> = spec
                    .coeffs()?
                    .into_iter()
                    .map(|c| Multivector::scalar(n, c))
                    .collect();
                let g = g.clone();
                let profile = profile.clone().expect("general profile path");
                let f: PointFn = Box::new(move |x| {
                    Ok(supershift_multifreq_slice_with(&g, &profile, &nodes, &zs, x)?)
                });
                Ok(f)
            });
            Ok(Family {
                limit,
                make_fn,
                bound: None,
            })
        }
        SettingKind::SupershiftMonogenic => {
            let g = match config.target {
                TargetKind::Exp => EntireMonogenicFn::exp(n, trunc)?,
                TargetKind::TaylorFile => {
                    EntireMonogenicFn::from_slice_coeffs(n, &load_taylor_coeffs(config)?)?
                }
            };
            let profile = config
                .profile
                .as_ref()
                .map(|p| build_profile(p, n))
                .transpose()?;
            let limit_g = g.clone();
            let limit_profile = profile.clone();
            let limit: PointFn = Box::new(move |x| {
                Ok(match &limit_profile {
                    None => cliffosc::supershift::supershift_monogenic_limit(&limit_g, a, x)?,
                    Some(p) => cliffosc::supershift::supershift_multifreq_monogenic_limit(
                        &limit_g, p, a, x,
                    )?,
                })
            });
            let make_fn = Box::new(move |big_n: usize| {
                let spec = SuperoscSpec::prototype(n, big_n, a, Setting::Monogenic);
                let freq_pow = match &profile {
                    None => Some(1),
                    Some(p) => p.uniform_monomial_power(),
                };
                if let Some(p) = freq_pow {
                    let moments =
                        node_moments(&spec, p * g.series().trunc_degree() as usize)?;
                    let series = moment_fueter_series(&g, &moments, p);
                    let f: PointFn = Box::new(move |x| Ok(series.eval(x)?));
                    return Ok(f);
                }
                let nodes = spec.nodes()?;
                let zs: Vec<Multivector<f64>> = spec
                    .coeffs()?
                    .into_iter()
                    .map(|c| Multivector::scalar(n, c))
                    .collect();
                let g = g.clone();
                let profile = profile.clone().expect("general profile path");
                let f: PointFn = Box::new(move |x| {
                    Ok(supershift_multifreq_monogenic_with(&g, &profile, &nodes, &zs, x)?)
                });
                Ok(f)
            });
            Ok(Family {
                limit,
                make_fn,
                bound: None,
            })
        }
    }
}

/// Run the convergence experiment: one row per N with the sup error over
/// the grid, the analytic bound maximum (slice setting), the weighted-norm
/// error at the effective sigma, and the wall time. Grid evaluations run in
/// parallel; maxima reduce in fixed index order, so results do not depend
/// on the thread count.
pub fn run_convergence(config: &ExperimentConfig) -> Result<Vec<ConvergenceRow>, HarnessError> {
    config.validate()?;
    let grid = ball_grid(config.n, config.radius, config.grid, config.seed);
    let sigma = config.effective_sigma();
    let family = build_family(config)?;
    let limit_vals: Vec<Multivector<f64>> = grid
        .par_iter()
        .map(|x| (family.limit)(x))
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::with_capacity(config.ns.len());
    for &big_n in &config.ns {
        let start = Instant::now();
        let f = (family.make_fn)(big_n)?;
        let errs: Vec<f64> = grid
            .par_iter()
            .zip(limit_vals.par_iter())
            .map(|(x, lim)| f(x).map(|v| (&v - lim).norm()))
            .collect::<Result<_, _>>()?;
        let mut sup_error = 0.0_f64;
        let mut a1_error = 0.0_f64;
        for (x, e) in grid.iter().zip(&errs) {
            sup_error = sup_error.max(*e);
            a1_error = a1_error.max(e * (-sigma * x.norm()).exp());
        }
        let bound = family.bound.as_ref().map(|b| {
            grid.iter()
                .map(|x| b(big_n, x))
                .fold(0.0_f64, f64::max)
        });
        rows.push(ConvergenceRow {
            big_n,
            sup_error,
            bound,
            a1_error,
            wall_ms: start.elapsed().as_millis() as u64,
        });
    }
    Ok(rows)
}
