//! Experiment configuration.
//!
//! ```json
//! {
//!   "experiment": "random-fields",
//!   "model": {"n": 100, "gamma": 0.1},
//!   "samples": 10000,
//!   "seed": 1,
//!   "expect": [{"scalar": "mean_concurrence", "min": 0.142, "max": 0.182}]
//! }
//! ```
//!
//! Unset model parameters take per-experiment defaults.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::expect::Expectation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Theorem1Demo,
    XySweep,
    RandomFields,
    UniformFields,
    RandomCouplings,
    EffectiveCheck,
    DiscordAppendix,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        Self::Theorem1Demo,
        Self::XySweep,
        Self::RandomFields,
        Self::UniformFields,
        Self::RandomCouplings,
        Self::EffectiveCheck,
        Self::DiscordAppendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Theorem1Demo => "theorem1-demo",
            Self::XySweep => "xy-sweep",
            Self::RandomFields => "random-fields",
            Self::UniformFields => "uniform-fields",
            Self::RandomCouplings => "random-couplings",
            Self::EffectiveCheck => "effective-check",
            Self::DiscordAppendix => "discord-appendix",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    /// Free fermions for XX/YY/Z chains, dense diagonalization otherwise.
    #[default]
    Auto,
    Exact,
    #[serde(alias = "ff")]
    #[value(alias = "ff")]
    Freefermion,
}

/// Model parameters shared by the builders. Which ones matter depends on
/// the experiment.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<f64>,
    /// Probe-mediator coupling of the enhancement chain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupling: Option<f64>,
    /// Random fields are drawn from `[-field_range, field_range]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_range: Option<f64>,
    /// End-bond coupling of the random-coupling chain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    /// Half-width of the random couplings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    /// Probe fields of the three-spin Ising chain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1z: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h3z: Option<f64>,
}

pub const SWEEP_PARAMS: [&str; 10] = ["n", "gamma", "alpha", "h0", "coupling", "field_range", "j", "amplitude", "h1z", "h3z"];

impl ModelParams {
    /// Sets a parameter by name.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), ConfigError> {
        let int = |field: &str| -> Result<i64, ConfigError> {
            if value.fract() != 0.0 {
                return Err(ConfigError::new(field, format!("expected an integer, got {value}")));
            }
            Ok(value as i64)
        };
        match name {
            "n" => self.n = Some(int("n")?.max(0) as usize),
            "alpha" => self.alpha = Some(int("alpha")? as i8),
            "gamma" => self.gamma = Some(value),
            "h0" => self.h0 = Some(value),
            "coupling" => self.coupling = Some(value),
            "field_range" => self.field_range = Some(value),
            "j" => self.j = Some(value),
            "amplitude" => self.amplitude = Some(value),
            "h1z" => self.h1z = Some(value),
            "h3z" => self.h3z = Some(value),
            _ => {
                return Err(ConfigError::new(
                    "sweep.param",
                    format!("unknown parameter `{name}`; expected one of {SWEEP_PARAMS:?}"),
                ))
            }
        }
        Ok(())
    }

    /// `self` with unset fields taken from `defaults`.
    pub fn or(&self, defaults: &ModelParams) -> ModelParams {
        ModelParams {
            n: self.n.or(defaults.n),
            gamma: self.gamma.or(defaults.gamma),
            alpha: self.alpha.or(defaults.alpha),
            h0: self.h0.or(defaults.h0),
            coupling: self.coupling.or(defaults.coupling),
            field_range: self.field_range.or(defaults.field_range),
            j: self.j.or(defaults.j),
            amplitude: self.amplitude.or(defaults.amplitude),
            h1z: self.h1z.or(defaults.h1z),
            h3z: self.h3z.or(defaults.h3z),
        }
    }
}

/// Values of one swept parameter, either listed or generated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub param: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
}

/// `points` values from `start` to `stop` inclusive, log-spaced if `log`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub log: bool,
}

impl Sweep {
    pub fn list(param: &str, values: impl Into<Vec<f64>>) -> Self {
        Self { param: param.into(), values: values.into(), grid: None }
    }

    pub fn values(&self) -> Vec<f64> {
        let mut out = self.values.clone();
        if let Some(g) = &self.grid {
            out.extend(g.values());
        }
        out
    }
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.start],
            p => (0..p)
                .map(|k| {
                    let t = k as f64 / (p - 1) as f64;
                    if self.log {
                        (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                    } else {
                        self.start + t * (self.stop - self.start)
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HistogramConfig {
    #[serde(default = "default_c_width")]
    pub concurrence_width: f64,
    #[serde(default = "default_gap_width")]
    pub log10_gap_width: f64,
}

fn default_c_width() -> f64 {
    0.002
}

fn default_gap_width() -> f64 {
    0.25
}

impl Default for HistogramConfig {
    fn default() -> Self {
        Self { concurrence_width: default_c_width(), log10_gap_width: default_gap_width() }
    }
}

/// Sample count above which a warning about run time is logged.
pub const LARGE_RUN_SAMPLES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub model: ModelParams,
    /// Inner sweep; each experiment has a default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    /// Outer loop producing several curves of the same sweep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Sweep>,
    /// Disorder samples per point; experiment default when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub solver: SolverChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub histogram: HistogramConfig,
    /// Worker threads; all available cores when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expect: Vec<Expectation>,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        Self {
            experiment,
            model: ModelParams::default(),
            sweep: None,
            series: None,
            samples: None,
            seed: 0,
            solver: SolverChoice::Auto,
            out_dir: None,
            histogram: HistogramConfig::default(),
            threads: None,
            expect: Vec::new(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(s).map_err(|e| ConfigError::new("<json>", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("<file>", format!("{}: {e}", path.display())))?;
        Self::from_json_str(&s)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.samples == Some(0) {
            return Err(ConfigError::new("samples", "must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(ConfigError::new("threads", "must be at least 1"));
        }
        for (field, sweep) in [("sweep", &self.sweep), ("series", &self.series)] {
            if let Some(s) = sweep {
                if !SWEEP_PARAMS.contains(&s.param.as_str()) {
                    return Err(ConfigError::new(
                        &format!("{field}.param"),
                        format!("unknown parameter `{}`; expected one of {SWEEP_PARAMS:?}", s.param),
                    ));
                }
                if let Some(g) = &s.grid {
                    if g.log && (g.start <= 0.0 || g.stop <= 0.0) {
                        return Err(ConfigError::new(&format!("{field}.grid"), "log grid needs positive bounds"));
                    }
                }
                if let Some(v) = s.values().iter().find(|v| !v.is_finite()) {
                    return Err(ConfigError::new(&format!("{field}.values"), format!("non-finite value {v}")));
                }
            }
        }
        if let Some(a) = self.model.alpha {
            if a != 1 && a != -1 {
                return Err(ConfigError::new("model.alpha", format!("must be +1 or -1, got {a}")));
            }
        }
        for (field, w) in [
            ("histogram.concurrence_width", self.histogram.concurrence_width),
            ("histogram.log10_gap_width", self.histogram.log10_gap_width),
        ] {
            if !(w > 0.0) || !w.is_finite() {
                return Err(ConfigError::new(field, format!("must be positive, got {w}")));
            }
        }
        for (k, e) in self.expect.iter().enumerate() {
            e.validate().map_err(|m| ConfigError::new(&format!("expect[{k}]"), m))?;
        }
        Ok(())
    }
}

/// Validation failure naming the offending field.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("config field `{field}`: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: &str, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let c = ExperimentConfig::from_json_str(r#"{"experiment": "xy-sweep"}"#).unwrap();
        assert_eq!(c.experiment, ExperimentKind::XySweep);
        assert_eq!(c.solver, SolverChoice::Auto);
        assert_eq!(c.histogram.concurrence_width, 0.002);
    }

    #[test]
    fn ff_alias() {
        let c = ExperimentConfig::from_json_str(r#"{"experiment": "xy-sweep", "solver": "ff"}"#).unwrap();
        assert_eq!(c.solver, SolverChoice::Freefermion);
    }

    #[test]
    fn field_level_errors() {
        let e = ExperimentConfig::from_json_str(r#"{"experiment": "random-fields", "samples": 0}"#).unwrap_err();
        assert_eq!(e.field, "samples");
        let e = ExperimentConfig::from_json_str(r#"{"experiment": "xy-sweep", "sweep": {"param": "q", "values": [1]}}"#)
            .unwrap_err();
        assert_eq!(e.field, "sweep.param");
        let e = ExperimentConfig::from_json_str(r#"{"experiment": "xy-sweep", "model": {"alpha": 2}}"#).unwrap_err();
        assert_eq!(e.field, "model.alpha");
        assert!(ExperimentConfig::from_json_str(r#"{"experiment": "nope"}"#).is_err());
    }

    #[test]
    fn grids() {
        let g = Grid { start: 1.0, stop: 100.0, points: 3, log: true };
        let v = g.values();
        assert!((v[1] - 10.0).abs() < 1e-12);
        let g = Grid { start: 0.0, stop: 1.0, points: 5, log: false };
        assert_eq!(g.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
