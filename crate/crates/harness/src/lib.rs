//! Config-driven experiments on top of `entspan_core`: disorder sampling,
//! parameter sweeps, histograms and CSV / JSON output.
//!
//! Each run is a pure function of its [`ExperimentConfig`]; per-sample
//! random streams make the output independent of the worker count.

pub mod config;
pub mod experiments;
pub mod expect;
pub mod histogram;
pub mod presets;
pub mod record;
pub mod rng;
pub mod solver;

pub use config::{ExperimentConfig, ExperimentKind, SolverChoice};
pub use entspan_core::fit::{fit_loglog, LogLogFit};
pub use experiments::{run, RunError};
pub use record::{emit_csv, emit_json, RunRecord};
