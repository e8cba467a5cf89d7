//! Disorder average over random couplings of a short XX chain.

use entspan_core::model::ProbePair;

use super::{key, mean_and_stderr, merge_exclusions, required, run_samples, sweep_or, with_param, RunError};
use crate::config::{ExperimentConfig, ModelParams, Sweep};
use crate::histogram::Histogram;
use crate::presets;
use crate::record::{Cell, RunRecord};
use crate::solver::solve_probes;

pub const DEFAULT_SAMPLES: usize = 2500;
pub const DEFAULT_J: [f64; 9] = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5];

fn defaults() -> ModelParams {
    ModelParams { n: Some(8), j: Some(0.25), amplitude: Some(0.05), ..Default::default() }
}

const COLUMNS: [&str; 6] = ["j", "mean_concurrence", "stderr", "clean_concurrence", "samples", "excluded"];

/// Every sweep point reuses the same disorder streams, so differences
/// between points are not masked by sampling noise.
pub(super) fn run(cfg: &ExperimentConfig) -> Result<RunRecord, RunError> {
    let base = cfg.model.or(&defaults());
    let sweep = sweep_or(&cfg.sweep, Sweep::list("j", DEFAULT_J));
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES) as u64;
    let mut record = RunRecord::new(cfg.clone(), &COLUMNS);
    record.columns[0] = sweep.param.clone();
    let mut best: Option<(f64, f64)> = None;
    for x in sweep.values() {
        let p = with_param(&base, &sweep.param, x)?;
        let (n, j, amp) = (required(p.n, "model.n")?, required(p.j, "model.j")?, required(p.amplitude, "model.amplitude")?);
        let probes = ProbePair::ends(n)?;
        let clean = solve_probes(&presets::random_coupling(n, j, 0.0, cfg.seed, 0)?, probes, cfg.solver)?;
        let s = run_samples(samples, |i| {
            let m = presets::random_coupling(n, j, amp, cfg.seed, i)?;
            Ok(solve_probes(&m, probes, cfg.solver)?.concurrence)
        })?;
        merge_exclusions(&mut record, samples, s.excluded, &s.exclusions);
        let cs: Vec<f64> = s.values.iter().map(|(_, c)| *c).collect();
        let (mean, se) = mean_and_stderr(&cs);
        record.push_row(vec![
            Cell::num(x),
            Cell::num(mean),
            Cell::num(se),
            Cell::num(clean.concurrence),
            Cell::from(cs.len()),
            Cell::from(s.excluded as usize),
        ]);
        let label = [(sweep.param.as_str(), x)];
        record.set_scalar(key("mean_concurrence", &label), mean);
        record.set_scalar(key("clean_concurrence", &label), clean.concurrence);
        if let Some(h) = Histogram::from_values(&cs, 0.0, cfg.histogram.concurrence_width) {
            record.histograms.insert(key("concurrence", &label), h);
        }
        if best.is_none_or(|(_, m)| mean > m) {
            best = Some((x, mean));
        }
    }
    if let Some((x, m)) = best {
        record.set_scalar(format!("argmax_{}", sweep.param), x);
        record.set_scalar("max_mean_concurrence", m);
    }
    Ok(record)
}
