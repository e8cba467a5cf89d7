//! Fixed-width histograms.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// Uniform bin edges, `counts.len() + 1` of them.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
    pub mean: f64,
    pub max: f64,
    pub min: f64,
}

impl Histogram {
    /// Bins of `width` aligned to integer multiples of `width` above
    /// `origin`, spanning all of `values`. Returns `None` for no values.
    pub fn from_values(values: &[f64], origin: f64, width: f64) -> Option<Self> {
        assert!(width > 0.0, "bin width must be positive");
        if values.is_empty() {
            return None;
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = ((min - origin) / width).floor();
        let mut bins = ((max - origin) / width).floor() - lo + 1.0;
        if bins < 1.0 {
            bins = 1.0;
        }
        let bins = bins as usize;
        let edges: Vec<f64> = (0..=bins).map(|k| origin + (lo + k as f64) * width).collect();
        let mut counts = vec![0u64; bins];
        for &v in values {
            let k = (((v - origin) / width).floor() - lo) as usize;
            counts[k.min(bins - 1)] += 1;
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Some(Self { edges, counts, total: values.len() as u64, mean, max, min })
    }

    pub fn width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }

    /// Fraction of samples in the bin containing `x`.
    pub fn fraction_at(&self, x: f64) -> f64 {
        let k = ((x - self.edges[0]) / self.width()).floor();
        if k < 0.0 || k as usize >= self.counts.len() {
            return 0.0;
        }
        self.counts[k as usize] as f64 / self.total as f64
    }

    /// `(left edge, count)` of the fullest bin.
    pub fn mode(&self) -> (f64, u64) {
        let (k, c) = self.counts.iter().enumerate().max_by_key(|(k, c)| (**c, std::cmp::Reverse(*k))).unwrap();
        (self.edges[k], *c)
    }
}
