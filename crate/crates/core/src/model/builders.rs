//! Hamiltonian families: the four-spin boundary construction, the XY-chain
//! field demonstration, the field-enhancement chain and the random-coupling
//! XX chain.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ChainModel, PauliLabel, Term};
use crate::{Error, Result};

/// Real 3x3 coupling tensor, `tensor[i][j]` multiplies `σ^i ⊗ σ^j` (i, j = x, y, z).
pub type CouplingTensor = [[f64; 3]; 3];

/// Diagonal (XYZ) coupling tensor.
pub fn xyz(jx: f64, jy: f64, jz: f64) -> CouplingTensor {
    [[jx, 0.0, 0.0], [0.0, jy, 0.0], [0.0, 0.0, jz]]
}

/// Bond terms `Σ_ij J^{ij} σ_a^i σ_b^j`.
pub fn tensor_bond(a: usize, b: usize, j: &CouplingTensor) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    for (i, pi) in PauliLabel::XYZ.into_iter().enumerate() {
        for (k, pk) in PauliLabel::XYZ.into_iter().enumerate() {
            if j[i][k] != 0.0 {
                out.push(Term::pair(a, pi, b, pk, j[i][k])?);
            }
        }
    }
    Ok(out)
}

/// Field terms `Σ_i h^i σ_site^i`.
pub fn field(site: usize, h: &[f64; 3]) -> Result<Vec<Term>> {
    PauliLabel::XYZ
        .into_iter()
        .zip(h)
        .filter(|(_, c)| **c != 0.0)
        .map(|(p, c)| Term::single(site, p, *c))
        .collect()
}

/// Couplings and fields of the four boundary spins (sites 1, 2, N-1, N).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundaryFieldParams {
    /// Probe 1 to spin 2.
    pub j_a: CouplingTensor,
    /// Spin 2 to spin 3.
    pub jt_a: CouplingTensor,
    /// Spin N-2 to spin N-1.
    pub jt_b: CouplingTensor,
    /// Spin N-1 to probe N.
    pub j_b: CouplingTensor,
    pub h1: [f64; 3],
    pub h2: [f64; 3],
    pub h_n1: [f64; 3],
    pub h_n: [f64; 3],
    /// Mediator Hamiltonian; must avoid the four boundary sites.
    pub media_terms: Vec<Term>,
}

/// Hamiltonian of two probes attached through two field-controlled spins to a
/// mediator occupying the interior sites.
pub fn build_boundary_field_model(n: usize, p: &BoundaryFieldParams) -> Result<ChainModel> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("boundary construction needs n >= 4, got {n}")));
    }
    let boundary = [0, 1, n - 2, n - 1];
    for t in &p.media_terms {
        if let Some(s) = t.factors.sites().find(|s| boundary.contains(s)) {
            return Err(Error::InvalidTerm(format!(
                "mediator term `{t}` acts on boundary site {}",
                s + 1
            )));
        }
    }
    if p.media_terms.is_empty() {
        log::warn!("mediator Hamiltonian is proportional to the identity");
    }
    let mut terms = Vec::new();
    terms.extend(tensor_bond(0, 1, &p.j_a)?);
    terms.extend(tensor_bond(1, 2, &p.jt_a)?);
    terms.extend(tensor_bond(n - 3, n - 2, &p.jt_b)?);
    terms.extend(tensor_bond(n - 2, n - 1, &p.j_b)?);
    terms.extend(field(0, &p.h1)?);
    terms.extend(field(1, &p.h2)?);
    terms.extend(field(n - 2, &p.h_n1)?);
    terms.extend(field(n - 1, &p.h_n)?);
    terms.extend(p.media_terms.iter().cloned());
    ChainModel::new(n, terms)
}

/// Parameters of the XY-chain families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XYChainParams {
    pub n: usize,
    /// Anisotropy: bonds are (1+γ) σ^xσ^x and (1-γ) σ^yσ^y.
    pub gamma: f64,
    /// Sign in front of the σ^xσ^x mediator bonds (±1).
    #[serde(default = "plus_one")]
    pub alpha: i8,
    /// Field on the spins next to the probes (demonstration model).
    #[serde(default)]
    pub h0: f64,
    /// Probe-mediator XX+YY coupling (enhancement model).
    #[serde(default = "default_coupling")]
    pub coupling: f64,
    /// z fields on sites 2..N-1 (enhancement model), length n-2.
    #[serde(default)]
    pub fields: Vec<f64>,
}

fn plus_one() -> i8 {
    1
}

fn default_coupling() -> f64 {
    0.02
}

impl XYChainParams {
    pub fn demo(n: usize, gamma: f64, h0: f64) -> Self {
        Self { n, gamma, alpha: 1, h0, coupling: default_coupling(), fields: Vec::new() }
    }

    pub fn enhancement(n: usize, gamma: f64, alpha: i8, fields: Vec<f64>) -> Self {
        Self { n, gamma, alpha, h0: 0.0, coupling: default_coupling(), fields }
    }

    fn validate(&self) -> Result<()> {
        if self.alpha != 1 && self.alpha != -1 {
            return Err(Error::InvalidParameter(format!("alpha must be ±1, got {}", self.alpha)));
        }
        if !self.gamma.is_finite() || !self.h0.is_finite() || !self.coupling.is_finite() {
            return Err(Error::InvalidParameter("non-finite XY chain parameter".into()));
        }
        Ok(())
    }
}

fn xy_bond(a: usize, b: usize, jx: f64, jy: f64) -> Result<[Term; 2]> {
    use PauliLabel::*;
    Ok([Term::pair(a, X, b, X, jx)?, Term::pair(a, Y, b, Y, jy)?])
}

/// XY chain with fields h0 on spins 2 and N-1 and the compensating
/// (1-γ²)/h0 fields on spins 1, 3, N-2 and N.
pub fn build_xy_demo(p: &XYChainParams) -> Result<ChainModel> {
    p.validate()?;
    let n = p.n;
    if n < 6 {
        return Err(Error::InvalidParameter(format!("demonstration chain needs n >= 6, got {n}")));
    }
    if p.h0 == 0.0 {
        return Err(Error::InvalidParameter("h0 = 0 leaves the compensating field undefined".into()));
    }
    let (jx, jy) = (1.0 + p.gamma, 1.0 - p.gamma);
    let comp = (1.0 - p.gamma * p.gamma) / p.h0;
    let mut media = Vec::new();
    for s in 2..=n - 4 {
        media.extend(xy_bond(s, s + 1, jx, jy)?);
    }
    media.push(Term::single(2, PauliLabel::Z, comp)?);
    media.push(Term::single(n - 3, PauliLabel::Z, comp)?);
    let bond = xyz(jx, jy, 0.0);
    let params = BoundaryFieldParams {
        j_a: bond,
        jt_a: bond,
        jt_b: bond,
        j_b: bond,
        h1: [0.0, 0.0, comp],
        h2: [0.0, 0.0, p.h0],
        h_n1: [0.0, 0.0, p.h0],
        h_n: [0.0, 0.0, comp],
        media_terms: media,
    };
    build_boundary_field_model(n, &params)
}

/// Limit h0 → ∞ of [`build_xy_demo`] with spins 2 and N-1 traced out: an
/// (n-2)-site XY chain whose end bonds are -(1±γ)²/h0.
pub fn build_xy_demo_effective(p: &XYChainParams) -> Result<ChainModel> {
    p.validate()?;
    let n = p.n;
    if n < 6 {
        return Err(Error::InvalidParameter(format!("demonstration chain needs n >= 6, got {n}")));
    }
    if p.h0 == 0.0 {
        return Err(Error::InvalidParameter("h0 = 0".into()));
    }
    let m = n - 2;
    let (jx, jy) = (1.0 + p.gamma, 1.0 - p.gamma);
    let (ex, ey) = (-jx * jx / p.h0, -jy * jy / p.h0);
    let mut terms = Vec::new();
    terms.extend(xy_bond(0, 1, ex, ey)?);
    for s in 1..m - 2 {
        terms.extend(xy_bond(s, s + 1, jx, jy)?);
    }
    terms.extend(xy_bond(m - 2, m - 1, ex, ey)?);
    ChainModel::new(m, terms)
}

/// XY mediator with per-site z fields, weakly coupled (XX+YY) to the probes.
pub fn build_xy_enhancement(p: &XYChainParams) -> Result<ChainModel> {
    p.validate()?;
    let n = p.n;
    if n < 4 {
        return Err(Error::InvalidParameter(format!("enhancement chain needs n >= 4, got {n}")));
    }
    if p.fields.len() != n - 2 {
        return Err(Error::InvalidParameter(format!(
            "expected {} mediator fields (sites 2..{}), got {}",
            n - 2,
            n - 1,
            p.fields.len()
        )));
    }
    let alpha = p.alpha as f64;
    let mut terms = Vec::new();
    terms.extend(xy_bond(0, 1, p.coupling, p.coupling)?);
    for s in 1..=n - 3 {
        terms.extend(xy_bond(s, s + 1, alpha * (1.0 + p.gamma), 1.0 - p.gamma)?);
    }
    terms.extend(xy_bond(n - 2, n - 1, p.coupling, p.coupling)?);
    for (k, &h) in p.fields.iter().enumerate() {
        if !h.is_finite() {
            return Err(Error::NonFiniteCoefficient(h));
        }
        if h != 0.0 {
            terms.push(Term::single(k + 1, PauliLabel::Z, h)?);
        }
    }
    ChainModel::new(n, terms)
}

/// Parameters of the random-coupling XX chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomCouplingParams {
    #[serde(default = "default_random_n")]
    pub n: usize,
    /// Probe coupling J on the two end bonds.
    pub j: f64,
    /// Half-width of the uniform δJ distribution.
    pub amplitude: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_random_n() -> usize {
    8
}

/// XX+YY chain with end bonds J and a uniform random coupling
/// `Σ_l Σ_{ij} δJ_l^{ij} σ_l^i σ_{l+1}^j` on every bond, (i, j) ∈ {0,x,y,z}²
/// without the identity-identity component.
///
/// Draw order: bond by bond from site 1, then `i` in (0, x, y, z), then `j`.
pub fn build_random_coupling<R: Rng + ?Sized>(
    p: &RandomCouplingParams,
    rng: &mut R,
) -> Result<ChainModel> {
    use PauliLabel::*;
    let n = p.n;
    if n < 4 {
        return Err(Error::InvalidParameter(format!("random-coupling chain needs n >= 4, got {n}")));
    }
    if !(p.amplitude >= 0.0) || !p.amplitude.is_finite() {
        return Err(Error::InvalidParameter(format!("amplitude must be >= 0, got {}", p.amplitude)));
    }
    let mut terms = Vec::new();
    terms.extend(xy_bond(0, 1, p.j, p.j)?);
    for s in 1..=n - 3 {
        terms.extend(xy_bond(s, s + 1, 1.0, 1.0)?);
    }
    terms.extend(xy_bond(n - 2, n - 1, p.j, p.j)?);
    if p.amplitude > 0.0 {
        for s in 0..n - 1 {
            for pi in [I, X, Y, Z] {
                for pj in [I, X, Y, Z] {
                    if pi == I && pj == I {
                        continue;
                    }
                    let dj = rng.random_range(-p.amplitude..=p.amplitude);
                    let factors = super::PauliString::new(vec![(s, pi), (s + 1, pj)])?;
                    terms.push(Term::new(factors, dj)?);
                }
            }
        }
    }
    ChainModel::new(n, terms)
}
