//! Disorder average over random mediator fields.

use entspan_core::model::{build_xy_enhancement, ProbePair, XYChainParams};
use rand::Rng;

use super::{mean_and_stderr, merge_exclusions, required, run_samples, RunError};
use crate::config::{ExperimentConfig, ModelParams, LARGE_RUN_SAMPLES};
use crate::histogram::Histogram;
use crate::record::{Cell, RunRecord};
use crate::rng::sample_rng;
use crate::solver::solve_probes;

pub const DEFAULT_SAMPLES: usize = 10_000;
/// Sample count of the full-size study.
pub const FULL_SCALE_SAMPLES: usize = 10_000_000;

fn defaults() -> ModelParams {
    ModelParams {
        n: Some(100),
        gamma: Some(0.1),
        alpha: Some(1),
        coupling: Some(0.02),
        field_range: Some(1.5),
        ..Default::default()
    }
}

pub(super) fn run(cfg: &ExperimentConfig) -> Result<RunRecord, RunError> {
    let p = cfg.model.or(&defaults());
    let n = required(p.n, "model.n")?;
    let range = required(p.field_range, "model.field_range")?;
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    if samples > LARGE_RUN_SAMPLES {
        log::warn!("{samples} disorder samples of a {n}-site chain; expect a long run");
    }
    let chain = |fields: Vec<f64>| {
        let mut xp = XYChainParams::enhancement(n, p.gamma.unwrap_or(0.0), p.alpha.unwrap_or(1), fields);
        xp.coupling = p.coupling.unwrap_or(0.02);
        build_xy_enhancement(&xp)
    };
    let probes = ProbePair::ends(n)?;
    let mut record = RunRecord::new(cfg.clone(), &["sample", "concurrence", "gap", "log10_gap"]);

    let clean = solve_probes(&chain(vec![0.0; n - 2])?, probes, cfg.solver);
    match clean {
        Ok(r) => {
            record.set_scalar("clean_concurrence", r.concurrence);
            record.set_scalar("clean_gap", r.gap);
        }
        Err(e) => record.notes.push(format!("clean chain: {e}")),
    }

    let s = run_samples(samples as u64, |i| {
        let mut rng = sample_rng(cfg.seed, i);
        let fields: Vec<f64> = (0..n - 2).map(|_| rng.random_range(-range..=range)).collect();
        let r = solve_probes(&chain(fields)?, probes, cfg.solver)?;
        Ok((r.concurrence, r.gap, r.correction))
    })?;
    merge_exclusions(&mut record, samples as u64, s.excluded, &s.exclusions);

    let mut cs = Vec::with_capacity(s.values.len());
    let mut logs = Vec::with_capacity(s.values.len());
    let mut worst_correction: f64 = 0.0;
    for (i, (c, g, corr)) in &s.values {
        let lg = if *g > 0.0 { g.log10() } else { f64::NAN };
        record.push_row(vec![Cell::from(*i as usize), Cell::num(*c), Cell::num(*g), Cell::num(lg)]);
        cs.push(*c);
        if lg.is_finite() {
            logs.push(lg);
        }
        worst_correction = worst_correction.max(*corr);
    }
    let (mean, se) = mean_and_stderr(&cs);
    record.set_scalar("mean_concurrence", mean);
    record.set_scalar("stderr_concurrence", se);
    record.set_scalar("max_psd_correction", worst_correction);
    let width = cfg.histogram.concurrence_width;
    if let Some(h) = Histogram::from_values(&cs, 0.0, width) {
        record.set_scalar("max_concurrence", h.max);
        record.set_scalar("first_bin_fraction", h.fraction_at(0.5 * width));
        record.histograms.insert("concurrence".into(), h);
    }
    if let Some(h) = Histogram::from_values(&logs, 0.0, cfg.histogram.log10_gap_width) {
        record.set_scalar("mean_log10_gap", h.mean);
        record.histograms.insert("log10_gap".into(), h);
    }
    Ok(record)
}
