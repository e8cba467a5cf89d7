//! Assertions a config can attach to its run.
//!
//! A target is either a scalar name from the record or a column reduction
//! `max(col)`, `min(col)`, `mean(col)`.

use serde::{Deserialize, Serialize};

use crate::record::RunRecord;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    /// Passes when `|value - approx| <= tol`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectationOutcome {
    pub target: String,
    pub criterion: String,
    pub value: Option<f64>,
    pub pass: bool,
}

impl Expectation {
    pub fn within(target: &str, approx: f64, tol: f64) -> Self {
        Self { target: target.into(), min: None, max: None, approx: Some(approx), tol: Some(tol) }
    }

    pub fn range(target: &str, min: Option<f64>, max: Option<f64>) -> Self {
        Self { target: target.into(), min, max, approx: None, tol: None }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.min.is_none() && self.max.is_none() && self.approx.is_none() {
            return Err("needs at least one of min, max, approx".into());
        }
        if self.approx.is_some() != self.tol.is_some() {
            return Err("approx and tol go together".into());
        }
        parse_target(&self.target)?;
        Ok(())
    }

    fn criterion(&self) -> String {
        let mut parts = Vec::new();
        if let Some(lo) = self.min {
            parts.push(format!(">= {lo}"));
        }
        if let Some(hi) = self.max {
            parts.push(format!("<= {hi}"));
        }
        if let (Some(a), Some(t)) = (self.approx, self.tol) {
            parts.push(format!("= {a} ± {t}"));
        }
        parts.join(", ")
    }

    pub fn evaluate(&self, record: &RunRecord) -> ExpectationOutcome {
        let value = resolve(&self.target, record);
        let pass = value.is_some_and(|v| {
            self.min.is_none_or(|lo| v >= lo)
                && self.max.is_none_or(|hi| v <= hi)
                && match (self.approx, self.tol) {
                    (Some(a), Some(t)) => (v - a).abs() <= t,
                    _ => true,
                }
        });
        ExpectationOutcome { target: self.target.clone(), criterion: self.criterion(), value, pass }
    }
}

enum Target<'a> {
    Scalar(&'a str),
    Reduce(&'a str, &'a str),
}

fn parse_target(t: &str) -> Result<Target<'_>, String> {
    if let Some((op, rest)) = t.split_once('(') {
        let col = rest.strip_suffix(')').ok_or_else(|| format!("unbalanced parentheses in `{t}`"))?;
        if !matches!(op, "max" | "min" | "mean") {
            return Err(format!("unknown reduction `{op}`"));
        }
        Ok(Target::Reduce(op, col))
    } else {
        Ok(Target::Scalar(t))
    }
}

fn resolve(target: &str, record: &RunRecord) -> Option<f64> {
    match parse_target(target).ok()? {
        Target::Scalar(name) => record.scalars.get(name).copied(),
        Target::Reduce(op, col) => {
            let vals: Vec<f64> = record.column(col)?.into_iter().flatten().collect();
            if vals.is_empty() {
                return None;
            }
            Some(match op {
                "max" => vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                "min" => vals.iter().copied().fold(f64::INFINITY, f64::min),
                _ => vals.iter().sum::<f64>() / vals.len() as f64,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Cell;

    fn record() -> RunRecord {
        let mut r = RunRecord::empty_for_tests(vec!["c".into()]);
        r.rows = vec![vec![Cell::Num(0.1)], vec![Cell::Num(0.3)], vec![Cell::Null]];
        r.scalars.insert("mean".into(), 0.2);
        r
    }

    #[test]
    fn scalar_and_reductions() {
        let r = record();
        assert!(Expectation::within("mean", 0.21, 0.02).evaluate(&r).pass);
        assert!(!Expectation::within("mean", 0.3, 0.02).evaluate(&r).pass);
        assert!(Expectation::range("max(c)", None, Some(0.3)).evaluate(&r).pass);
        assert!(!Expectation::range("min(c)", Some(0.2), None).evaluate(&r).pass);
        assert_eq!(Expectation::range("mean(c)", None, Some(1.0)).evaluate(&r).value, Some(0.2));
        let missing = Expectation::range("nothing", Some(0.0), None).evaluate(&r);
        assert!(!missing.pass && missing.value.is_none());
    }

    #[test]
    fn validation() {
        assert!(Expectation::range("x", None, None).validate().is_err());
        assert!(Expectation::range("median(x)", Some(0.0), None).validate().is_err());
        assert!(Expectation { tol: None, ..Expectation::within("x", 1.0, 0.1) }.validate().is_err());
    }
}
