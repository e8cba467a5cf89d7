//! Deterministic field sweeps of the XY chains.

use entspan_core::fit::fit_loglog;
use entspan_core::model::{ChainModel, ProbePair};

use super::{key, required, sweep_or, with_param, RunError};
use crate::config::{ExperimentConfig, Grid, ModelParams, Sweep};
use crate::presets;
use crate::record::{Cell, RunRecord};
use crate::solver::solve_probes;

/// Sweep values at or above this enter the gap power-law fit.
pub const GAP_FIT_FROM: f64 = 10.0;

fn xy_defaults() -> ModelParams {
    ModelParams { n: Some(100), gamma: Some(0.0), h0: Some(100.0), ..Default::default() }
}

fn uniform_defaults() -> ModelParams {
    ModelParams { n: Some(200), gamma: Some(0.5), alpha: Some(-1), coupling: Some(0.02), ..Default::default() }
}

/// Midpoints of 200 equal cells on `[0, 2]`, which avoids the critical point.
pub fn uniform_h0_grid() -> Vec<f64> {
    (0..200).map(|k| (k as f64 + 0.5) * 2.0 / 200.0).collect()
}

struct Curve {
    label: Option<(String, f64)>,
    xs: Vec<f64>,
    cs: Vec<Option<f64>>,
    gaps: Vec<Option<f64>>,
}

/// Runs `build` for every series value (outer) and sweep value (inner).
/// Failed points leave empty cells and are tallied as exclusions.
fn sweep_curves(
    cfg: &ExperimentConfig,
    base: &ModelParams,
    default_sweep: Sweep,
    build: impl Fn(&ModelParams) -> entspan_core::Result<ChainModel> + Sync,
    record: &mut RunRecord,
) -> Result<Vec<Curve>, RunError> {
    use rayon::prelude::*;
    let sweep = sweep_or(&cfg.sweep, default_sweep);
    let xs = sweep.values();
    let series: Vec<Option<f64>> = match &cfg.series {
        Some(s) => s.values().into_iter().map(Some).collect(),
        None => vec![None],
    };
    let mut curves = Vec::new();
    for sv in series {
        let params = match (sv, &cfg.series) {
            (Some(v), Some(s)) => with_param(base, &s.param, v)?,
            _ => base.clone(),
        };
        let points: Vec<ModelParams> =
            xs.iter().map(|&x| with_param(&params, &sweep.param, x)).collect::<Result<_, _>>()?;
        let results: Vec<entspan_core::Result<(f64, f64)>> = points
            .par_iter()
            .map(|p| {
                let model = build(p)?;
                let r = solve_probes(&model, ProbePair::ends(model.n_sites())?, cfg.solver)?;
                Ok((r.concurrence, r.gap))
            })
            .collect();
        let mut curve = Curve {
            label: sv.map(|v| (cfg.series.as_ref().unwrap().param.clone(), v)),
            xs: xs.clone(),
            cs: Vec::new(),
            gaps: Vec::new(),
        };
        for (x, r) in xs.iter().zip(results) {
            match r {
                Ok((c, g)) => {
                    curve.cs.push(Some(c));
                    curve.gaps.push(Some(g));
                }
                Err(e) if crate::solver::is_fatal(&e) => return Err(e.into()),
                Err(e) => {
                    log::debug!("{}={x}: {e}", sweep.param);
                    *record.exclusions.entry(super::error_kind(&e)).or_insert(0) += 1;
                    record.excluded_samples += 1;
                    curve.cs.push(None);
                    curve.gaps.push(None);
                }
            }
        }
        record.requested_samples += xs.len() as u64;
        curves.push(curve);
    }
    record.used_samples = record.requested_samples - record.excluded_samples;
    let mut cols: Vec<&str> = Vec::new();
    if let Some(s) = &cfg.series {
        cols.push(&s.param);
    }
    cols.extend([sweep.param.as_str(), "concurrence", "gap"]);
    record.columns = cols.iter().map(|s| s.to_string()).collect();
    for c in &curves {
        for k in 0..c.xs.len() {
            let mut row = Vec::new();
            if let Some((_, v)) = &c.label {
                row.push(Cell::num(*v));
            }
            row.extend([Cell::num(c.xs[k]), Cell::opt(c.cs[k]), Cell::opt(c.gaps[k])]);
            record.push_row(row);
        }
    }
    Ok(curves)
}

fn labels(c: &Curve) -> Vec<(&str, f64)> {
    c.label.iter().map(|(k, v)| (k.as_str(), *v)).collect()
}

/// XY chain with strong fields next to the probes, swept in `h0`.
pub(super) fn run_xy(cfg: &ExperimentConfig) -> Result<RunRecord, RunError> {
    let base = cfg.model.or(&xy_defaults());
    let default_sweep = Sweep { param: "h0".into(), values: Vec::new(), grid: Some(Grid { start: 1.0, stop: 100.0, points: 21, log: true }) };
    let mut cfg = cfg.clone();
    if cfg.series.is_none() && cfg.model.gamma.is_none() {
        cfg.series = Some(Sweep::list("gamma", [0.0, 0.03, 0.05]));
    }
    let mut record = RunRecord::new(cfg.clone(), &[]);
    let curves = sweep_curves(
        &cfg,
        &base,
        default_sweep,
        |p| presets::xy_demo(required(p.n, "model.n").map_err(cfg_err)?, p.gamma.unwrap_or(0.0), p.h0.unwrap_or(0.0)),
        &mut record,
    )?;
    for c in &curves {
        let pts: Vec<(f64, f64)> = c
            .xs
            .iter()
            .zip(&c.gaps)
            .filter_map(|(&x, g)| g.filter(|g| *g > 0.0 && x >= GAP_FIT_FROM).map(|g| (x, g)))
            .collect();
        if pts.len() >= 3 {
            let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
            let fit = fit_loglog(&xs, &ys)?;
            record.set_scalar(key("gap_slope", &labels(c)), fit.slope);
            record.set_scalar(key("gap_fit_r2", &labels(c)), fit.r2);
        }
    }
    Ok(record)
}

fn cfg_err(e: crate::config::ConfigError) -> entspan_core::Error {
    entspan_core::Error::InvalidParameter(e.to_string())
}

/// Enhancement chain with uniform mediator fields; reports the peak.
pub(super) fn run_uniform(cfg: &ExperimentConfig) -> Result<RunRecord, RunError> {
    let base = cfg.model.or(&uniform_defaults());
    let mut record = RunRecord::new(cfg.clone(), &[]);
    let curves = sweep_curves(
        cfg,
        &base,
        Sweep::list("h0", uniform_h0_grid()),
        |p| {
            let mut xp = entspan_core::model::XYChainParams::enhancement(
                required(p.n, "model.n").map_err(cfg_err)?,
                p.gamma.unwrap_or(0.0),
                p.alpha.unwrap_or(-1),
                vec![p.h0.unwrap_or(0.0); p.n.unwrap_or(2).saturating_sub(2)],
            );
            xp.coupling = p.coupling.unwrap_or(0.02);
            entspan_core::model::build_xy_enhancement(&xp)
        },
        &mut record,
    )?;
    if record.excluded_samples > 0 {
        record.notes.push(format!(
            "{} sweep points have a zero mode below the free-fermion tolerance and are left empty",
            record.excluded_samples
        ));
    }
    for c in &curves {
        let best = c
            .xs
            .iter()
            .zip(&c.cs)
            .filter_map(|(&x, c)| c.map(|c| (x, c)))
            .max_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((x, cmax)) = best {
            record.set_scalar(key("argmax", &labels(c)), x);
            record.set_scalar(key("peak_concurrence", &labels(c)), cmax);
        }
    }
    Ok(record)
}
