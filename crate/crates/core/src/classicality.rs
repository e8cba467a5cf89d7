//! Classical splits of the interaction Hamiltonian.
//!
//! An interaction `H_int` splits classically for probes `(a, b)` when it can
//! be written `H_A + H_B` with `H_A` free of probe `b`, `H_B` free of probe
//! `a`, and `[H_A, H_B] = 0`. Such a split rules out ground-state
//! entanglement between the probes for every choice of probe fields. The
//! search here works at the granularity of whole terms, so a failed search
//! is inconclusive rather than a proof of non-classicality.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::to_dense;
use crate::model::{ChainModel, PauliString, ProbePair, Term};
use crate::{Error, Result, C64};

pub const DEFAULT_MAX_FREE_TERMS: usize = 20;
pub const DEFAULT_COMMUTATOR_TOL: f64 = 1e-10;

/// Assignment of interaction-term indices to `H_A` and `H_B`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermPartition {
    pub a_terms: Vec<usize>,
    pub b_terms: Vec<usize>,
}

impl TermPartition {
    pub fn new(mut a_terms: Vec<usize>, mut b_terms: Vec<usize>) -> Self {
        a_terms.sort_unstable();
        b_terms.sort_unstable();
        Self { a_terms, b_terms }
    }

    fn check_cover(&self, n_terms: usize) -> Result<()> {
        let mut seen = vec![false; n_terms];
        for &i in self.a_terms.iter().chain(&self.b_terms) {
            if i >= n_terms {
                return Err(Error::PartitionMismatch(format!("term index {i} out of range ({n_terms} terms)")));
            }
            if seen[i] {
                return Err(Error::PartitionMismatch(format!("term {i} assigned twice")));
            }
            seen[i] = true;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::PartitionMismatch(format!("term {i} not assigned")));
        }
        Ok(())
    }
}

/// Pauli expansion `Σ c_P P` of a commutator.
pub type PauliSum = HashMap<PauliString, C64>;

/// `[Σ_i a_i, Σ_j b_j]` via Pauli algebra. Anticommuting factor pairs give
/// `2 c_a c_b P_a P_b`, commuting pairs give nothing.
pub fn symbolic_commutator(a: &[Term], b: &[Term]) -> PauliSum {
    let mut out = PauliSum::new();
    for x in a {
        for y in b {
            add_pair(&mut out, x, y, 1.0);
        }
    }
    out.retain(|_, c| c.norm() > 0.0);
    out
}

fn add_pair(out: &mut PauliSum, x: &Term, y: &Term, sign: f64) {
    if x.factors.commutes_with(&y.factors) {
        return;
    }
    let (ph, s) = x.factors.product(&y.factors);
    *out.entry(s).or_default() += ph * (2.0 * x.coeff * y.coeff * sign);
}

/// Normalized Hilbert-Schmidt norm `sqrt(tr(O†O) / 2^n) = sqrt(Σ |c_P|²)`.
pub fn pauli_norm(sum: &PauliSum) -> f64 {
    sum.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn terms_norm(terms: &[Term]) -> f64 {
    let mut acc: HashMap<&PauliString, f64> = HashMap::new();
    for t in terms {
        *acc.entry(&t.factors).or_default() += t.coeff;
    }
    acc.values().map(|c| c * c).sum::<f64>().sqrt()
}

/// Normalized Hilbert-Schmidt norm of `[A, B]` from dense matrices.
pub fn dense_commutator_norm(a: &[Term], b: &[Term], n_sites: usize) -> Result<f64> {
    let ma = to_dense(&ChainModel::new(n_sites, a.iter().cloned())?)?.to_complex();
    let mb = to_dense(&ChainModel::new(n_sites, b.iter().cloned())?)?.to_complex();
    let c = &ma * &mb - &mb * &ma;
    let dim = c.nrows() as f64;
    Ok((c.norm_l2().powi(2) / dim).sqrt())
}

/// Checks probe containment and `‖[H_A, H_B]‖ <= tol ‖H_A‖ ‖H_B‖`.
pub fn verify_classical_split(
    int_terms: &[Term],
    partition: &TermPartition,
    probes: ProbePair,
    tol: f64,
) -> Result<bool> {
    partition.check_cover(int_terms.len())?;
    if partition.a_terms.iter().any(|&i| int_terms[i].touches(probes.b))
        || partition.b_terms.iter().any(|&i| int_terms[i].touches(probes.a))
    {
        return Ok(false);
    }
    let a: Vec<Term> = partition.a_terms.iter().map(|&i| int_terms[i].clone()).collect();
    let b: Vec<Term> = partition.b_terms.iter().map(|&i| int_terms[i].clone()).collect();
    let comm = pauli_norm(&symbolic_commutator(&a, &b));
    Ok(comm <= tol * terms_norm(&a) * terms_norm(&b))
}

/// Exhaustive term-level search.
///
/// Terms on probe `a` go to `H_A`, terms on probe `b` to `H_B`; a term on
/// both means no split exists at this granularity. The remaining terms are
/// assigned by depth-first search, pruning a branch as soon as its partial
/// commutator holds a Pauli component that no pair involving an unassigned
/// term could cancel.
pub fn find_classical_split(
    int_terms: &[Term],
    probes: ProbePair,
    max_free_terms: usize,
) -> Result<Option<TermPartition>> {
    let n = int_terms.len();
    let mut side: Vec<Option<bool>> = vec![None; n]; // Some(true) = A
    let mut free = Vec::new();
    for (i, t) in int_terms.iter().enumerate() {
        match (t.touches(probes.a), t.touches(probes.b)) {
            (true, true) => return Ok(None),
            (true, false) => side[i] = Some(true),
            (false, true) => side[i] = Some(false),
            (false, false) => free.push(i),
        }
    }
    if free.len() > max_free_terms {
        let pick = |want| side.iter().enumerate().filter(|(_, s)| **s == Some(want)).map(|(i, _)| i).collect();
        return Err(Error::SearchSpaceExceeded {
            free: free.len(),
            cap: max_free_terms,
            forced_a: pick(true),
            forced_b: pick(false),
        });
    }

    // anticommuting pairs by the Pauli string they produce
    let mut producers: HashMap<PauliString, Vec<(usize, usize)>> = HashMap::new();
    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if !int_terms[i].factors.commutes_with(&int_terms[j].factors) {
                let (_, s) = int_terms[i].factors.product(&int_terms[j].factors);
                producers.entry(s).or_default().push((i, j));
                partners[i].push(j);
                partners[j].push(i);
            }
        }
    }
    // most constrained first: terms anticommuting with many forced terms
    free.sort_by_key(|&i| {
        let forced = partners[i].iter().filter(|&&j| side[j].is_some()).count();
        (std::cmp::Reverse(forced), std::cmp::Reverse(partners[i].len()), i)
    });

    let scale = int_terms.iter().map(|t| t.coeff.abs()).fold(0.0, f64::max).powi(2).max(f64::MIN_POSITIVE);
    let mut search = Search { terms: int_terms, side, producers, partners, residual: PauliSum::new(), scale };
    for i in 0..n {
        if search.side[i] == Some(true) {
            for j in 0..n {
                if search.side[j] == Some(false) {
                    add_pair(&mut search.residual, &int_terms[i], &int_terms[j], 1.0);
                }
            }
        }
    }
    if !search.dfs(&free) {
        return Ok(None);
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (i, s) in search.side.iter().enumerate() {
        match s {
            Some(true) => a.push(i),
            _ => b.push(i),
        }
    }
    let partition = TermPartition::new(a, b);
    debug_assert!(verify_classical_split(int_terms, &partition, probes, DEFAULT_COMMUTATOR_TOL)?);
    Ok(Some(partition))
}

struct Search<'a> {
    terms: &'a [Term],
    side: Vec<Option<bool>>,
    producers: HashMap<PauliString, Vec<(usize, usize)>>,
    partners: Vec<Vec<usize>>,
    residual: PauliSum,
    scale: f64,
}

impl Search<'_> {
    fn is_zero(&self, c: &C64) -> bool {
        c.norm() <= 1e-12 * self.scale
    }

    fn assign(&mut self, t: usize, to_a: bool, sign: f64) {
        for &j in &self.partners[t] {
            match self.side[j] {
                Some(s) if s != to_a => {
                    let (x, y) = if to_a { (t, j) } else { (j, t) };
                    add_pair(&mut self.residual, &self.terms[x], &self.terms[y], sign);
                }
                _ => {}
            }
        }
    }

    fn viable(&self) -> bool {
        self.residual.iter().all(|(k, c)| {
            self.is_zero(c)
                || self.producers[k].iter().any(|&(i, j)| self.side[i].is_none() || self.side[j].is_none())
        })
    }

    fn dfs(&mut self, free: &[usize]) -> bool {
        if !self.viable() {
            return false;
        }
        let Some((&t, rest)) = free.split_first() else {
            return self.residual.values().all(|c| self.is_zero(c));
        };
        for to_a in [true, false] {
            self.side[t] = Some(to_a);
            self.assign(t, to_a, 1.0);
            if self.dfs(rest) {
                return true;
            }
            self.assign(t, to_a, -1.0);
            self.side[t] = None;
        }
        false
    }
}

/// Outcome of the classicality analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Classification {
    /// A verified split exists; probe concurrence is zero for all probe fields.
    Classical { partition: TermPartition },
    /// No split at term level; non-classicality is not proven.
    NoTermLevelSplit,
}

impl Classification {
    pub fn is_classical(&self) -> bool {
        matches!(self, Classification::Classical { .. })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Classical { partition } => {
                write!(f, "classical split: A = {:?}, B = {:?}", partition.a_terms, partition.b_terms)
            }
            Classification::NoTermLevelSplit => write!(f, "no term-level split (inconclusive)"),
        }
    }
}

/// Interaction terms of `model` for `probes` and their classification.
pub fn classify(model: &ChainModel, probes: ProbePair) -> Result<(Vec<Term>, Classification)> {
    let (int, _) = model.split_int_lf(probes);
    let verdict = match find_classical_split(&int, probes, DEFAULT_MAX_FREE_TERMS)? {
        Some(partition) => Classification::Classical { partition },
        None => Classification::NoTermLevelSplit,
    };
    Ok((int, verdict))
}

/// True only when a classical split was found, which guarantees zero probe
/// concurrence for every choice of probe fields. False is inconclusive.
pub fn predict_zero_concurrence(model: &ChainModel, probes: ProbePair) -> Result<bool> {
    Ok(classify(model, probes)?.1.is_classical())
}
