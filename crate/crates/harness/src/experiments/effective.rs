//! Full chains against their effective two-probe descriptions.

use entspan_core::model::ProbePair;

use super::{key, required, sweep_or, with_param, RunError};
use crate::config::{ExperimentConfig, ModelParams, Sweep};
use crate::presets;
use crate::record::{Cell, RunRecord};
use crate::solver::solve_probes;

const COLUMNS: [&str; 8] = [
    "gamma",
    "h0",
    "concurrence_full",
    "concurrence_effective",
    "difference",
    "gap_full",
    "gap_effective",
    "n",
];

/// Middle-field strengths of the three-spin precision check.
pub const THEOREM2_FIELDS: [f64; 4] = [25.0, 50.0, 100.0, 200.0];

fn defaults() -> ModelParams {
    ModelParams { n: Some(100), h0: Some(100.0), ..Default::default() }
}

pub(super) fn run(cfg: &ExperimentConfig) -> Result<RunRecord, RunError> {
    let base = cfg.model.or(&defaults());
    let series = match (&cfg.series, cfg.model.gamma) {
        (Some(s), _) => s.clone(),
        (None, Some(g)) => Sweep::list("gamma", [g]),
        (None, None) => Sweep::list("gamma", [0.0, 0.03, 0.05]),
    };
    let sweep = sweep_or(&cfg.sweep, Sweep::list("h0", [required(base.h0, "model.h0")?]));
    let mut record = RunRecord::new(cfg.clone(), &COLUMNS);
    for sv in series.values() {
        for x in sweep.values() {
            let p = with_param(&with_param(&base, &series.param, sv)?, &sweep.param, x)?;
            let (n, gamma, h0) = (required(p.n, "model.n")?, p.gamma.unwrap_or(0.0), required(p.h0, "model.h0")?);
            let full = presets::xy_demo(n, gamma, h0)?;
            let eff = presets::xy_demo_effective(n, gamma, h0)?;
            let rf = solve_probes(&full, ProbePair::ends(n)?, cfg.solver)?;
            let re = solve_probes(&eff, ProbePair::ends(n - 2)?, cfg.solver)?;
            let diff = rf.concurrence - re.concurrence;
            record.push_row(vec![
                Cell::num(gamma),
                Cell::num(h0),
                Cell::num(rf.concurrence),
                Cell::num(re.concurrence),
                Cell::num(diff),
                Cell::num(rf.gap),
                Cell::num(re.gap),
                Cell::from(n),
            ]);
            let label = [("gamma", gamma), ("h0", h0)];
            record.set_scalar(key("concurrence_full", &label), rf.concurrence);
            record.set_scalar(key("concurrence_effective", &label), re.concurrence);
            record.set_scalar(key("difference", &label), diff);
        }
    }
    let diffs: Vec<f64> = record.column("difference").unwrap_or_default().into_iter().flatten().collect();
    record.set_scalar("max_abs_difference", diffs.iter().fold(0.0, |m: f64, d| m.max(d.abs())));

    let scaling = entspan_core::effective::precision_scaling(presets::theorem2_environment, &THEOREM2_FIELDS, &[1])?;
    for (h, d) in scaling.h_values.iter().zip(&scaling.distances) {
        record.set_scalar(key("theorem2_distance", &[("h2z", *h)]), *d);
    }
    if let Some(fit) = scaling.fit {
        record.set_scalar("theorem2_slope", fit.slope);
        record.set_scalar("theorem2_r2", fit.r2);
    }
    Ok(record)
}
