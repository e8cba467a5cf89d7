//! Experiment dispatch and the shared disorder-sampling loop.

mod appendix;
mod couplings;
mod effective;
mod fields;
mod sweep;
mod theorem1;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::config::{ConfigError, ExperimentConfig, ExperimentKind, ModelParams, Sweep};
use crate::record::RunRecord;

pub use fields::FULL_SCALE_SAMPLES;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Solver(#[from] entspan_core::Error),
    #[error("{excluded} of {requested} samples failed (more than 1%); first error: {first}")]
    TooManyExclusions { excluded: u64, requested: u64, first: String },
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Runs `config` and evaluates its expectations.
pub fn run(config: &ExperimentConfig) -> Result<RunRecord, RunError> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| RunError::Pool(e.to_string()))?;
    let start = Instant::now();
    let mut record = pool.install(|| match config.experiment {
        ExperimentKind::Theorem1Demo => theorem1::run(config),
        ExperimentKind::XySweep => sweep::run_xy(config),
        ExperimentKind::UniformFields => sweep::run_uniform(config),
        ExperimentKind::RandomFields => fields::run(config),
        ExperimentKind::RandomCouplings => couplings::run(config),
        ExperimentKind::EffectiveCheck => effective::run(config),
        ExperimentKind::DiscordAppendix => appendix::run(config),
    })?;
    record.expectations = config.expect.iter().map(|e| e.evaluate(&record)).collect();
    record.wall_time_s = start.elapsed().as_secs_f64();
    Ok(record)
}

/// Per-sample results in index order plus the exclusion tally.
pub(crate) struct Samples<T> {
    pub values: Vec<(u64, T)>,
    pub excluded: u64,
    pub exclusions: BTreeMap<String, u64>,
}

/// Evaluates `f` on sample indices `0..count` in parallel. Sample errors are
/// tallied; configuration-level errors abort the run, as does an exclusion
/// rate above 1%.
pub(crate) fn run_samples<T, F>(count: u64, f: F) -> Result<Samples<T>, RunError>
where
    T: Send,
    F: Fn(u64) -> entspan_core::Result<T> + Sync,
{
    let results: Vec<(u64, entspan_core::Result<T>)> = (0..count).into_par_iter().map(|i| (i, f(i))).collect();
    let mut values = Vec::with_capacity(results.len());
    let mut exclusions = BTreeMap::new();
    let mut first = None;
    for (i, r) in results {
        match r {
            Ok(v) => values.push((i, v)),
            Err(e) if crate::solver::is_fatal(&e) => return Err(e.into()),
            Err(e) => {
                let kind = error_kind(&e);
                *exclusions.entry(kind).or_insert(0) += 1;
                first.get_or_insert_with(|| format!("sample {i}: {e}"));
            }
        }
    }
    let excluded = count - values.len() as u64;
    if excluded * 100 > count {
        return Err(RunError::TooManyExclusions { excluded, requested: count, first: first.unwrap_or_default() });
    }
    if excluded > 0 {
        log::warn!("{excluded} of {count} samples excluded: {exclusions:?}");
    }
    Ok(Samples { values, excluded, exclusions })
}

/// Error class used as the exclusion key.
pub(crate) fn error_kind(e: &entspan_core::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

pub(crate) fn merge_exclusions(record: &mut RunRecord, requested: u64, s_excluded: u64, ex: &BTreeMap<String, u64>) {
    record.requested_samples += requested;
    record.used_samples += requested - s_excluded;
    record.excluded_samples += s_excluded;
    for (k, v) in ex {
        *record.exclusions.entry(k.clone()).or_insert(0) += v;
    }
}

/// Values of `sweep`, or of `default` when the config has none.
pub(crate) fn sweep_or(sweep: &Option<Sweep>, default: Sweep) -> Sweep {
    sweep.clone().unwrap_or(default)
}

/// `params` with `name` set to `value`.
pub(crate) fn with_param(params: &ModelParams, name: &str, value: f64) -> Result<ModelParams, ConfigError> {
    let mut p = params.clone();
    p.set(name, value)?;
    Ok(p)
}

/// Scalar key such as `argmax_h0[gamma=0.5]`.
pub(crate) fn key(base: &str, labels: &[(&str, f64)]) -> String {
    if labels.is_empty() {
        return base.to_string();
    }
    let inner: Vec<String> = labels.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{base}[{}]", inner.join(","))
}

/// Fields that must be set after defaults are applied.
pub(crate) fn required<T: Copy>(v: Option<T>, field: &str) -> Result<T, ConfigError> {
    v.ok_or_else(|| ConfigError::new(field, "required for this experiment"))
}

pub(crate) fn mean_and_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    if v.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
