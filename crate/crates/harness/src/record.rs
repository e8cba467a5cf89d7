//! Run records and their CSV / JSON forms.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::expect::ExpectationOutcome;
use crate::histogram::Histogram;

/// One CSV cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    /// Non-finite values become [`Cell::Null`].
    pub fn num(v: f64) -> Self {
        if v.is_finite() {
            Cell::Num(v)
        } else {
            Cell::Null
        }
    }

    pub fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Null, Cell::num)
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(i) => Some(*i as f64),
            Cell::Bool(b) => Some(*b as u8 as f64),
            _ => None,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Null => Ok(()),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Int(i) => write!(f, "{i}"),
            Cell::Num(v) => {
                let a = v.abs();
                if a == 0.0 || (1e-4..1e15).contains(&a) {
                    write!(f, "{v}")
                } else {
                    write!(f, "{v:e}")
                }
            }
            Cell::Text(s) => f.write_str(s),
        }
    }
}

/// Everything a run produced. Numeric content is a pure function of the
/// config; only `wall_time_s` varies between identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: ExperimentConfig,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub scalars: BTreeMap<String, f64>,
    pub histograms: BTreeMap<String, Histogram>,
    pub requested_samples: u64,
    pub used_samples: u64,
    pub excluded_samples: u64,
    /// Error message to count, for excluded samples.
    pub exclusions: BTreeMap<String, u64>,
    pub expectations: Vec<ExpectationOutcome>,
    pub notes: Vec<String>,
    pub seed: u64,
    pub rng_algorithm: String,
    pub version: String,
    pub wall_time_s: f64,
}

impl RunRecord {
    pub fn new(config: ExperimentConfig, columns: &[&str]) -> Self {
        Self {
            seed: config.seed,
            config,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            scalars: BTreeMap::new(),
            histograms: BTreeMap::new(),
            requested_samples: 0,
            used_samples: 0,
            excluded_samples: 0,
            exclusions: BTreeMap::new(),
            expectations: Vec::new(),
            notes: Vec::new(),
            rng_algorithm: crate::rng::RNG_ALGORITHM.into(),
            version: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).into(),
            wall_time_s: 0.0,
        }
    }

    #[cfg(test)]
    pub(crate) fn empty_for_tests(columns: Vec<String>) -> Self {
        let mut r = Self::new(ExperimentConfig::new(crate::config::ExperimentKind::XySweep), &[]);
        r.columns = columns;
        r
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Records a scalar; non-finite values are dropped with a warning.
    pub fn set_scalar(&mut self, name: impl Into<String>, value: f64) {
        let name = name.into();
        if value.is_finite() {
            self.scalars.insert(name, value);
        } else {
            log::warn!("scalar `{name}` is {value}; not recorded");
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k].as_f64()).collect())
    }

    pub fn all_expectations_pass(&self) -> bool {
        self.expectations.iter().all(|e| e.pass)
    }

    pub fn to_csv_string(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        write_csv(self, &mut w)?;
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn write_csv<W: std::io::Write>(record: &RunRecord, w: &mut csv::Writer<W>) -> Result<(), csv::Error> {
    w.write_record(&record.columns)?;
    for row in &record.rows {
        w.write_record(row.iter().map(|c| c.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the data rows with a header; an empty sweep gives a header-only file.
pub fn emit_csv(record: &RunRecord, path: &Path) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    write_csv(record, &mut w)
}

pub fn emit_json(record: &RunRecord, path: &Path) -> std::io::Result<()> {
    let s = serde_json::to_string_pretty(record).map_err(std::io::Error::other)?;
    std::fs::write(path, s + "\n")
}

pub fn read_json(path: &Path) -> std::io::Result<RunRecord> {
    let s = std::fs::read_to_string(path)?;
    serde_json::from_str(&s).map_err(std::io::Error::other)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_formatting_round_trips() {
        for v in [0.0, 1.0, 0.1, 1.69e-4, 1.19e-8, -3.5e-12, 123.456, 5e20] {
            let s = Cell::Num(v).to_string();
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(Cell::Num(1.19e-8).to_string(), "1.19e-8");
        assert_eq!(Cell::Int(7).to_string(), "7");
        assert_eq!(Cell::num(f64::NAN), Cell::Null);
        assert_eq!(Cell::Null.to_string(), "");
    }

    #[test]
    fn header_only_for_empty_rows() {
        let r = RunRecord::empty_for_tests(vec!["gamma".into(), "h0".into()]);
        assert_eq!(r.to_csv_string().unwrap(), "gamma,h0\n");
    }

    #[test]
    fn cells_survive_json() {
        let cells = vec![Cell::Null, Cell::Bool(true), Cell::Int(3), Cell::Num(1.0), Cell::Num(0.25), Cell::Text("x".into())];
        let s = serde_json::to_string(&cells).unwrap();
        let back: Vec<Cell> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cells);
    }
}
