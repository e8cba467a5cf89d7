//! Random probe fields on classical and non-classical chains.

use entspan_core::classicality::predict_zero_concurrence;
use entspan_core::model::{field, ChainModel, ProbePair};
use rand::Rng;

use super::{merge_exclusions, run_samples, RunError};
use crate::config::ExperimentConfig;
use crate::presets;
use crate::record::{Cell, RunRecord};
use crate::rng::{derive_seed, sample_rng};
use crate::solver::solve_probes;

const COLUMNS: [&str; 10] = ["model", "predicted_zero", "sample", "h1x", "h1y", "h1z", "hnx", "hny", "hnz", "concurrence"];

pub(super) fn run(cfg: &ExperimentConfig) -> Result<RunRecord, RunError> {
    let samples = cfg.samples.unwrap_or(100) as u64;
    let range = cfg.model.field_range.unwrap_or(2.0);
    let models: [(&str, ChainModel); 3] = [
        ("classical-chain", presets::classical_chain()?),
        ("ising-chain", presets::ising_chain(0.0, 0.0)?),
        ("non-classical-chain", presets::non_classical_chain()?),
    ];
    let mut record = RunRecord::new(cfg.clone(), &COLUMNS);
    let mut worst_classical: f64 = 0.0;
    for (m_index, (name, model)) in models.iter().enumerate() {
        let probes = ProbePair::ends(model.n_sites())?;
        let predicted = predict_zero_concurrence(model, probes)?;
        let stream = derive_seed(cfg.seed, m_index as u64);
        let s = run_samples(samples, |i| {
            let mut rng = sample_rng(stream, i);
            let mut h = [0.0; 6];
            for v in &mut h {
                *v = rng.random_range(-range..=range);
            }
            let mut extra = field(probes.a, &[h[0], h[1], h[2]])?;
            extra.extend(field(probes.b, &[h[3], h[4], h[5]])?);
            let r = solve_probes(&model.with_terms(extra)?, probes, cfg.solver)?;
            Ok((h, r.concurrence))
        })?;
        merge_exclusions(&mut record, samples, s.excluded, &s.exclusions);
        let mut max_c: f64 = 0.0;
        for (i, (h, c)) in &s.values {
            let mut row = vec![Cell::from(*name), Cell::from(predicted), Cell::from(*i as usize)];
            row.extend(h.iter().map(|&v| Cell::num(v)));
            row.push(Cell::num(*c));
            record.push_row(row);
            max_c = max_c.max(*c);
        }
        record.set_scalar(format!("max_concurrence[{name}]"), max_c);
        if predicted {
            worst_classical = worst_classical.max(max_c);
        }
    }
    record.set_scalar("max_concurrence_classical", worst_classical);
    Ok(record)
}
