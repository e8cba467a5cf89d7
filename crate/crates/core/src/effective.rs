//! Second-order effective Hamiltonians obtained by eliminating a mediator.
//!
//! The model is split as `H = H_R + H_0 + H_couple`, where `H_0` holds the
//! terms entirely on the mediator sites, `H_R` the terms entirely on the
//! retained sites, and `H_couple` everything in between. With `|ψ_0⟩` the
//! non-degenerate ground state of `H_0` and `Q_0 = 1 - |ψ_0⟩⟨ψ_0|`,
//!
//! ```text
//! H_eff = E_0 + H_R + ⟨ψ_0|H_couple|ψ_0⟩
//!       + ⟨ψ_0|H_couple Q_0 (E_0 - H_0)^{-1} Q_0 H_couple|ψ_0⟩
//! ```
//!
//! acts on the retained sites, relabeled `0..r` in ascending order.

use std::collections::BTreeMap;

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::entanglement::pauli_components;
use crate::exact::{
    eigh, reduced_ground_state, to_dense, trace_distance, DensityMatrix, GroundSpace, DEFAULT_DEGENERACY_TOL,
};
use crate::fit::{fit_loglog, LogLogFit};
use crate::model::{xyz, CouplingTensor, PauliLabel, PauliString, ProbePair, Term};
use crate::model::ChainModel;
use crate::{Error, Result, C64};

/// `‖H_1‖ / gap` above which a warning is logged.
pub const PERTURBATION_WARN_RATIO: f64 = 0.1;

/// Mediator data of the perturbative split.
#[derive(Clone, Debug)]
pub struct PerturbationSplit {
    /// Mediator sites in the original labelling, ascending.
    pub mediator: Vec<usize>,
    /// `H_0` relabeled onto the mediator.
    pub h0: ChainModel,
    /// Coupling terms in the original labelling.
    pub h1_terms: Vec<Term>,
    pub ground_vector: Vec<C64>,
    pub e0: f64,
    pub gap: f64,
    pub p0_rank: usize,
    /// `Σ |c|` over the coupling terms, an upper bound on `‖H_1‖`.
    pub h1_norm: f64,
}

impl PerturbationSplit {
    pub fn h1_over_gap(&self) -> f64 {
        self.h1_norm / self.gap
    }
}

/// Effective model on the retained sites, order by order.
#[derive(Clone, Debug)]
pub struct EffectiveModel {
    /// Retained sites in the original labelling; new site `k` is `retained[k]`.
    pub retained: Vec<usize>,
    pub split: PerturbationSplit,
    /// `H_R`, the terms that never touch the mediator.
    pub zeroth: Vec<Term>,
    pub first_order: Vec<Term>,
    pub second_order: Vec<Term>,
    /// `E_0` plus the identity part of the second-order term.
    pub constant: f64,
}

impl EffectiveModel {
    /// Sum of all orders (the constant is dropped).
    pub fn total(&self) -> Result<ChainModel> {
        let terms = self.zeroth.iter().chain(&self.first_order).chain(&self.second_order).cloned();
        ChainModel::new(self.retained.len(), terms)
    }

    /// `H_R + first order`.
    pub fn through_first_order(&self) -> Result<ChainModel> {
        ChainModel::new(self.retained.len(), self.zeroth.iter().chain(&self.first_order).cloned())
    }

    /// New label of an original site.
    pub fn new_label(&self, site: usize) -> Option<usize> {
        self.retained.binary_search(&site).ok()
    }
}

fn validate_mediator(n: usize, mediator: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut med = mediator.to_vec();
    med.sort_unstable();
    med.dedup();
    if med.len() != mediator.len() {
        return Err(Error::InvalidParameter("mediator sites repeated".into()));
    }
    if let Some(&s) = med.iter().find(|&&s| s >= n) {
        return Err(Error::SiteOutOfRange { site: s, n_sites: n });
    }
    if med.is_empty() || med.len() == n {
        return Err(Error::InvalidParameter("mediator must be a nonempty proper subset of the sites".into()));
    }
    let retained = (0..n).filter(|s| med.binary_search(s).is_err()).collect();
    Ok((med, retained))
}

fn split_string(p: &PauliString, mediator: &[usize], retained: &[usize]) -> Result<(PauliString, PauliString)> {
    let mut r = Vec::new();
    let mut m = Vec::new();
    for &(s, l) in p.factors() {
        match mediator.binary_search(&s) {
            Ok(k) => m.push((k, l)),
            Err(_) => r.push((retained.binary_search(&s).expect("site is retained"), l)),
        }
    }
    Ok((PauliString::new(r)?, PauliString::new(m)?))
}

/// Builds the effective Hamiltonian after eliminating `mediator_sites`.
pub fn effective_hamiltonian(model: &ChainModel, mediator_sites: &[usize]) -> Result<EffectiveModel> {
    let (mediator, retained) = validate_mediator(model.n_sites(), mediator_sites)?;
    let on_med = |t: &Term| t.factors.sites().all(|s| mediator.binary_search(&s).is_ok());
    let on_ret = |t: &Term| t.factors.sites().all(|s| mediator.binary_search(&s).is_err());

    let mut h0 = Vec::new();
    let mut zeroth = Vec::new();
    let mut couple = Vec::new();
    for t in model.terms() {
        if on_med(t) {
            let (_, m) = split_string(&t.factors, &mediator, &retained)?;
            h0.push(Term::new(m, t.coeff)?);
        } else if on_ret(t) {
            let (r, _) = split_string(&t.factors, &mediator, &retained)?;
            zeroth.push(Term::new(r, t.coeff)?);
        } else {
            couple.push(t.clone());
        }
    }
    let h0 = ChainModel::new(mediator.len(), h0)?;
    let spec = eigh(&to_dense(&h0)?)?;
    let gs = GroundSpace::from_spectrum(&spec, DEFAULT_DEGENERACY_TOL);
    let gap = spec.eigenvalues.get(1).map(|e| e - spec.eigenvalues[0]).unwrap_or(0.0);
    if gs.degeneracy > 1 {
        return Err(Error::DegenerateMediator { gap });
    }
    let e0 = gs.energy;
    let psi0 = gs.vectors[0].clone();
    let h1_norm: f64 = couple.iter().map(|t| t.coeff.abs()).sum();
    if h1_norm / gap > PERTURBATION_WARN_RATIO {
        log::warn!(
            "coupling norm {h1_norm:.3e} is {:.2} of the mediator gap {gap:.3e}; second order may be inaccurate",
            h1_norm / gap
        );
    }

    let dim = psi0.len();
    let n_med = mediator.len();
    let mut r_parts = Vec::with_capacity(couple.len());
    let mut w: Vec<Vec<C64>> = Vec::with_capacity(couple.len());
    let mut first = BTreeMap::<PauliString, f64>::new();
    for t in &couple {
        let (r, m) = split_string(&t.factors, &mediator, &retained)?;
        let mut phi = vec![C64::new(0.0, 0.0); dim];
        for (i, &amp) in psi0.iter().enumerate() {
            let (ph, j) = m.apply(i, n_med);
            phi[j] += ph * amp;
        }
        let mean: C64 = psi0.iter().zip(&phi).map(|(a, b)| a.conj() * b).sum();
        *first.entry(r.clone()).or_default() += t.coeff * mean.re;
        // w[n] = ⟨n| M |ψ_0⟩
        let wt: Vec<C64> = (0..dim)
            .map(|n| (0..dim).map(|i| spec.eigenvectors.get(i, n).conj() * phi[i]).sum())
            .collect();
        r_parts.push((r, t.coeff));
        w.push(wt);
    }

    let denom: Vec<f64> = spec.eigenvalues.iter().map(|e| e0 - e).collect();
    let mut second = BTreeMap::<PauliString, C64>::new();
    let mut scale = 0.0f64;
    for (t, (rt, ct)) in r_parts.iter().enumerate() {
        for (u, (ru, cu)) in r_parts.iter().enumerate() {
            let g: C64 = (1..dim).map(|n| w[t][n].conj() * w[u][n] / denom[n]).sum();
            let (ph, s) = rt.product(ru);
            let v = ph * g * (ct * cu);
            scale = scale.max(v.norm());
            *second.entry(s).or_default() += v;
        }
    }
    let mut constant = e0;
    let mut second_order = Vec::new();
    for (s, c) in second {
        if c.im.abs() > 1e-10 * scale.max(1e-300) + 1e-14 {
            return Err(Error::NotHermitian(c.im.abs()));
        }
        if s.is_identity() {
            constant += c.re;
        } else if c.re != 0.0 {
            second_order.push(Term::new(s, c.re)?);
        }
    }
    let first_order = first
        .into_iter()
        .filter(|(_, c)| *c != 0.0)
        .map(|(s, c)| Term::new(s, c))
        .collect::<Result<Vec<_>>>()?;

    Ok(EffectiveModel {
        retained,
        split: PerturbationSplit { mediator, h0, h1_terms: couple, ground_vector: psi0, e0, gap, p0_rank: 1, h1_norm },
        zeroth,
        first_order,
        second_order,
        constant,
    })
}

/// Effective two-probe Hamiltonian
/// `constant + h_a·σ_a + h_b·σ_b + Σ j_{ij} σ_a^i σ_b^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectiveTwoSpinHamiltonian {
    pub h_a: [f64; 3],
    pub h_b: [f64; 3],
    pub j: [[f64; 3]; 3],
    pub constant: f64,
    /// Probe fields through first order (local fields plus `⟨H_couple⟩`).
    pub order1_fields: [[f64; 3]; 2],
}

impl EffectiveTwoSpinHamiltonian {
    /// Pauli-basis projection `tr(H σ^μ ⊗ σ^ν) / 4` of a 4x4 operator with
    /// probe `a` as the first qubit.
    pub fn from_matrix(m: &Mat<C64>, order1_fields: [[f64; 3]; 2]) -> Self {
        let t = pauli_components(m);
        let mut out = Self { h_a: [0.0; 3], h_b: [0.0; 3], j: [[0.0; 3]; 3], constant: t[0][0] / 4.0, order1_fields };
        for i in 0..3 {
            out.h_a[i] = t[i + 1][0] / 4.0;
            out.h_b[i] = t[0][i + 1] / 4.0;
            for k in 0..3 {
                out.j[i][k] = t[i + 1][k + 1] / 4.0;
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Mat<C64> {
        let mut t = [[0.0; 4]; 4];
        t[0][0] = self.constant;
        for i in 0..3 {
            t[i + 1][0] = self.h_a[i];
            t[0][i + 1] = self.h_b[i];
            for k in 0..3 {
                t[i + 1][k + 1] = self.j[i][k];
            }
        }
        // the tensor-to-matrix map carries a factor ¼
        let mut m = crate::entanglement::tensor_to_matrix(&t);
        for j in 0..4 {
            for i in 0..4 {
                m[(i, j)] *= 4.0;
            }
        }
        m
    }

    /// The same operator as a 2-site model (constant dropped).
    pub fn to_model(&self) -> Result<ChainModel> {
        let mut terms = Vec::new();
        for (i, l) in PauliLabel::XYZ.into_iter().enumerate() {
            terms.push((vec![(0, l)], self.h_a[i]));
            terms.push((vec![(1, l)], self.h_b[i]));
            for (k, m) in PauliLabel::XYZ.into_iter().enumerate() {
                terms.push((vec![(0, l), (1, m)], self.j[i][k]));
            }
        }
        ChainModel::from_pairs(2, terms.into_iter().filter(|(_, c)| *c != 0.0))
    }
}

fn probe_fields(terms: &[Term], site: usize) -> [f64; 3] {
    let mut f = [0.0; 3];
    for t in terms {
        if let [(s, l)] = t.factors.factors() {
            if *s == site {
                f[l.index() - 1] += t.coeff;
            }
        }
    }
    f
}

/// Effective Hamiltonian of two probes, with every non-probe site treated
/// as the mediator.
pub fn second_order_effective(
    model: &ChainModel,
    probes: ProbePair,
    mediator_sites: &[usize],
) -> Result<EffectiveTwoSpinHamiltonian> {
    let eff = effective_hamiltonian(model, mediator_sites)?;
    let (Some(la), Some(lb)) = (eff.new_label(probes.a), eff.new_label(probes.b)) else {
        return Err(Error::PartitionMismatch("a probe lies in the mediator".into()));
    };
    if eff.retained.len() != 2 {
        return Err(Error::PartitionMismatch(format!(
            "{} sites retained; the two-probe form needs exactly the probes",
            eff.retained.len()
        )));
    }
    let order1 = [fields_through_first_order(&eff, la), fields_through_first_order(&eff, lb)];
    // probe a as the first qubit
    let total = eff.total()?.relabel(2, |s| if s == la { 0 } else { 1 })?;
    let mut m = to_dense(&total)?.to_complex();
    for i in 0..4 {
        m[(i, i)] += eff.constant;
    }
    Ok(EffectiveTwoSpinHamiltonian::from_matrix(&m, order1))
}

fn fields_through_first_order(eff: &EffectiveModel, label: usize) -> [f64; 3] {
    let z = probe_fields(&eff.zeroth, label);
    let f = probe_fields(&eff.first_order, label);
    [z[0] + f[0], z[1] + f[1], z[2] + f[2]]
}

/// Probe fields through first order: the probes' own single-site terms plus
/// the single-site part of `⟨ψ_0|H_couple|ψ_0⟩`.
pub fn first_order_fields(model: &ChainModel, probes: ProbePair, mediator_sites: &[usize]) -> Result<[[f64; 3]; 2]> {
    let eff = effective_hamiltonian(model, mediator_sites)?;
    let (Some(la), Some(lb)) = (eff.new_label(probes.a), eff.new_label(probes.b)) else {
        return Err(Error::PartitionMismatch("a probe lies in the mediator".into()));
    };
    Ok([fields_through_first_order(&eff, la), fields_through_first_order(&eff, lb)])
}

/// Probe field terms (original labels) that cancel [`first_order_fields`].
pub fn cancellation_fields(model: &ChainModel, probes: ProbePair, mediator_sites: &[usize]) -> Result<Vec<Term>> {
    let f = first_order_fields(model, probes, mediator_sites)?;
    let mut out = Vec::new();
    for (site, fs) in [probes.a, probes.b].into_iter().zip(f) {
        for (i, l) in PauliLabel::XYZ.into_iter().enumerate() {
            if fs[i] != 0.0 {
                out.push(Term::single(site, l, -fs[i])?);
            }
        }
    }
    Ok(out)
}

/// Three spins with `J·(σ_1 σ_2)`, `J'·(σ_2 σ_3)` diagonal couplings and a
/// field `h_2^z` on the middle spin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Params {
    pub j: [f64; 3],
    pub jp: [f64; 3],
    pub h2z: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Effective {
    pub jeff: [f64; 3],
    pub h1z_eff: f64,
    pub h3z_eff: f64,
}

impl Theorem2Params {
    /// The 3-site model, with optional local z fields on the outer spins.
    pub fn model(&self, h1z: f64, h3z: f64) -> Result<ChainModel> {
        let bond = |a: usize, j: &[f64; 3]| -> Result<Vec<Term>> {
            let t: CouplingTensor = xyz(j[0], j[1], j[2]);
            crate::model::tensor_bond(a, a + 1, &t)
        };
        let mut terms = bond(0, &self.j)?;
        terms.extend(bond(1, &self.jp)?);
        for (s, h) in [(0, h1z), (1, self.h2z), (2, h3z)] {
            if h != 0.0 {
                terms.push(Term::single(s, PauliLabel::Z, h)?);
            }
        }
        ChainModel::new(3, terms)
    }
}

/// Closed-form effective couplings for a strongly polarized middle spin.
pub fn theorem2_effective(p: &Theorem2Params) -> Result<Theorem2Effective> {
    let h = p.h2z;
    if h == 0.0 || !h.is_finite() {
        return Err(Error::InvalidParameter(format!("middle field must be finite and nonzero, got {h}")));
    }
    let (j, jp) = (p.j, p.jp);
    Ok(Theorem2Effective {
        jeff: [-j[0] * jp[0] / h, -j[1] * jp[1] / h, 0.0],
        h1z_eff: -j[2] - j[0] * j[1] / h,
        h3z_eff: -jp[2] - jp[0] * jp[1] / h,
    })
}

/// Trace distances between exact and effective retained-site ground states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionScaling {
    pub h_values: Vec<f64>,
    pub distances: Vec<f64>,
    /// Power-law fit of distance against h; absent when every distance is
    /// below 1e-13.
    pub fit: Option<LogLogFit>,
    /// Distances strictly decrease as h grows.
    pub monotonic: bool,
}

/// For each `h`, compares the exact ground state traced down to the
/// retained sites with the ground state of the effective model.
pub fn precision_scaling(
    family: impl Fn(f64) -> Result<ChainModel>,
    h_values: &[f64],
    mediator_sites: &[usize],
) -> Result<PrecisionScaling> {
    if h_values.len() < 4 {
        return Err(Error::TooFewPoints { needed: 4, got: h_values.len() });
    }
    let mut distances = Vec::with_capacity(h_values.len());
    for &h in h_values {
        let model = family(h)?;
        let eff = effective_hamiltonian(&model, mediator_sites)?;
        let exact = reduced_ground_state(&to_dense(&model)?, &eff.retained, DEFAULT_DEGENERACY_TOL)?;
        let approx = effective_ground_state(&eff)?;
        distances.push(trace_distance(&exact, &approx)?);
    }
    let mut order: Vec<usize> = (0..h_values.len()).collect();
    order.sort_by(|&a, &b| h_values[a].total_cmp(&h_values[b]));
    let monotonic = order.windows(2).all(|w| distances[w[1]] < distances[w[0]]);
    if !monotonic {
        log::warn!("trace distances are not monotonic in h: {distances:?}");
    }
    let fit = if distances.iter().all(|&d| d < 1e-13) { None } else { Some(fit_loglog(h_values, &distances)?) };
    Ok(PrecisionScaling { h_values: h_values.to_vec(), distances, fit, monotonic })
}

/// Ground state (uniform over a degenerate level) of the effective model.
pub fn effective_ground_state(eff: &EffectiveModel) -> Result<DensityMatrix> {
    crate::exact::ground_state_dm(&to_dense(&eff.total()?)?, DEFAULT_DEGENERACY_TOL)
}
