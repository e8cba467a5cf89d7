//! Symbolic spin-chain Hamiltonians as real-weighted sums of Pauli strings.
//!
//! Sites are 0-based internally. Reports and the CLI print the 1-based labels
//! used in the physics literature (site 0 is "spin 1").

mod builders;
mod pauli;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use builders::*;
pub use pauli::{PauliLabel, PauliString};

use crate::{Error, Result};

/// One summand `coeff * P` of a Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub factors: PauliString,
    pub coeff: f64,
}

impl Term {
    pub fn new(factors: PauliString, coeff: f64) -> Result<Self> {
        if !coeff.is_finite() {
            return Err(Error::NonFiniteCoefficient(coeff));
        }
        if factors.is_identity() {
            return Err(Error::InvalidTerm("identity term (empty factor list)".into()));
        }
        Ok(Self { factors, coeff })
    }

    pub fn single(site: usize, label: PauliLabel, coeff: f64) -> Result<Self> {
        Self::new(PauliString::single(site, label), coeff)
    }

    pub fn pair(a: usize, pa: PauliLabel, b: usize, pb: PauliLabel, coeff: f64) -> Result<Self> {
        Self::new(PauliString::pair(a, pa, b, pb)?, coeff)
    }

    pub fn is_single_site(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn touches(&self, site: usize) -> bool {
        self.factors.contains_site(site)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+} {}", self.coeff, self.factors)
    }
}

/// Canonical Hamiltonian on `n_sites` spin-1/2 sites.
///
/// Terms are sorted by Pauli string and duplicates merged; terms whose merged
/// coefficient is exactly zero are dropped. Real coefficients make the
/// operator Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainModel {
    n_sites: usize,
    terms: Vec<Term>,
}

impl ChainModel {
    /// Validates and canonicalizes a term list.
    pub fn new(n_sites: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::InvalidParameter("a chain needs at least one site".into()));
        }
        let mut merged: BTreeMap<PauliString, f64> = BTreeMap::new();
        for t in terms {
            if !t.coeff.is_finite() {
                return Err(Error::NonFiniteCoefficient(t.coeff));
            }
            if let Some(s) = t.factors.max_site() {
                if s >= n_sites {
                    return Err(Error::SiteOutOfRange { site: s, n_sites });
                }
            } else {
                return Err(Error::InvalidTerm("identity term".into()));
            }
            *merged.entry(t.factors).or_insert(0.0) += t.coeff;
        }
        let terms: Vec<Term> = merged
            .into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(factors, coeff)| Term { factors, coeff })
            .collect();
        let model = Self { n_sites, terms };
        if model.terms.is_empty() {
            log::debug!("model on {n_sites} sites has no terms (H = 0)");
        }
        Ok(model)
    }

    /// Builds from `(factors, coeff)` pairs, the shape of the JSON schema.
    pub fn from_pairs(
        n_sites: usize,
        pairs: impl IntoIterator<Item = (Vec<(usize, PauliLabel)>, f64)>,
    ) -> Result<Self> {
        let terms = pairs
            .into_iter()
            .map(|(f, c)| Term::new(PauliString::new(f)?, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_sites, terms)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns a canonical model with `extra` appended.
    pub fn with_terms(&self, extra: impl IntoIterator<Item = Term>) -> Result<Self> {
        Self::new(self.n_sites, self.terms.iter().cloned().chain(extra))
    }

    /// Coefficient of an exact Pauli string (0 when absent).
    pub fn coeff(&self, factors: &PauliString) -> f64 {
        self.terms
            .binary_search_by(|t| t.factors.cmp(factors))
            .map(|k| self.terms[k].coeff)
            .unwrap_or(0.0)
    }

    /// Sum of |coeff|, an upper bound on the operator norm.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }

    /// True when every term contains only σ^x, σ^z and an even number of σ^y,
    /// so the dense matrix is real.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.factors.y_count() % 2 == 0)
    }

    /// Splits into the interaction part and the local fields on the probes.
    ///
    /// The local-field part is every single-site term acting on a probe site.
    pub fn split_int_lf(&self, probes: ProbePair) -> (Vec<Term>, Vec<Term>) {
        self.terms
            .iter()
            .cloned()
            .partition(|t| !(t.is_single_site() && (t.touches(probes.a) || t.touches(probes.b))))
    }

    /// Relabels sites through `map` onto a chain of `n_sites` sites.
    pub fn relabel(&self, n_sites: usize, map: impl Fn(usize) -> usize) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term { factors: t.factors.relabel(&map)?, coeff: t.coeff }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_sites, terms)
    }

    pub fn to_json(&self) -> ModelJson {
        ModelJson {
            n: self.n_sites,
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    sites: t.factors.sites().collect(),
                    paulis: t.factors.factors().iter().map(|f| f.1).collect(),
                    coeff: t.coeff,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ModelJson) -> Result<Self> {
        let pairs = json
            .terms
            .iter()
            .map(|t| {
                if t.sites.len() != t.paulis.len() {
                    return Err(Error::InvalidTerm(format!(
                        "{} sites but {} Pauli labels",
                        t.sites.len(),
                        t.paulis.len()
                    )));
                }
                if t.paulis.contains(&PauliLabel::I) {
                    return Err(Error::InvalidTerm("identity label in a term".into()));
                }
                Ok((t.sites.iter().copied().zip(t.paulis.iter().copied()).collect(), t.coeff))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(json.n, pairs)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: ModelJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json())?)
    }
}

impl fmt::Display for ChainModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} sites, {} terms", self.n_sites, self.terms.len())?;
        for t in &self.terms {
            writeln!(f, "  {t}")?;
        }
        Ok(())
    }
}

/// Model file schema: `{"n": int, "terms": [{"sites": [int], "paulis": ["x"|"y"|"z"], "coeff": float}]}`.
///
/// Sites in model files are 0-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub sites: Vec<usize>,
    pub paulis: Vec<PauliLabel>,
    pub coeff: f64,
}

/// The two probe spins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProbePair {
    pub a: usize,
    pub b: usize,
}

impl ProbePair {
    pub fn new(a: usize, b: usize, n_sites: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidParameter(format!("probe sites coincide ({a})")));
        }
        for s in [a, b] {
            if s >= n_sites {
                return Err(Error::SiteOutOfRange { site: s, n_sites });
            }
        }
        Ok(Self { a, b })
    }

    /// First and last site of the chain.
    pub fn ends(n_sites: usize) -> Result<Self> {
        Self::new(0, n_sites.saturating_sub(1), n_sites)
    }

    pub fn contains(&self, site: usize) -> bool {
        site == self.a || site == self.b
    }
}

impl fmt::Display for ProbePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a + 1, self.b + 1)
    }
}
