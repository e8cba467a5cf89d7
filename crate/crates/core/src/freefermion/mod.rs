//! Jordan-Wigner solver for chains of nearest-neighbour XX and YY bonds
//! with z fields.
//!
//! Majorana convention, for 0-based site `l` and string `S_l = Π_{m<l} Z_m`:
//!
//! | operator            | Majoranas            |
//! |---------------------|----------------------|
//! | `c_{2l}`   = `a_l`  | `S_l X_l`            |
//! | `c_{2l+1}` = `b_l`  | `S_l Y_l`            |
//! | `Z_l`               | `-i a_l b_l`         |
//! | `X_l X_{l+1}`       | `-i b_l a_{l+1}`     |
//! | `Y_l Y_{l+1}`       | `i a_l b_{l+1}`      |
//!
//! The Hamiltonian is `H = (i/4) cᵀ A c`. Only `a`-`b` entries occur, so
//! `H = (i/2) Σ W_jk a_j b_k` with `W_jk = A(a_j, b_k)` and the ground state
//! follows from the singular value decomposition of `W`.

mod pfaffian;

use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use crate::entanglement::tensor_to_matrix;
use crate::exact::DensityMatrix;
use crate::model::{ChainModel, PauliLabel, ProbePair};
use crate::{Error, Result, C64};

pub use pfaffian::pfaffian;

/// Single-particle energies below this count as zero modes.
pub const DEFAULT_ZERO_MODE_TOL: f64 = 1e-12;
/// Most negative eigenvalue accepted (and clipped) when assembling a state.
pub const PSD_TOL: f64 = 1e-9;

/// Quadratic Majorana form `H = (i/4) cᵀ A c` of a spin chain.
#[derive(Clone, Debug)]
pub struct QuadraticModel {
    n: usize,
    a: Mat<f64>,
}

impl QuadraticModel {
    pub fn n_sites(&self) -> usize {
        self.n
    }

    /// The real antisymmetric `2n x 2n` matrix `A`.
    pub fn matrix(&self) -> &Mat<f64> {
        &self.a
    }

    /// The `n x n` block `W_jk = A(a_j, b_k)`.
    pub fn coupling_block(&self) -> Mat<f64> {
        Mat::from_fn(self.n, self.n, |j, k| self.a[(2 * j, 2 * k + 1)])
    }

    fn add_ab(&mut self, j: usize, k: usize, v: f64) {
        self.a[(2 * j, 2 * k + 1)] += v;
        self.a[(2 * k + 1, 2 * j)] -= v;
    }
}

/// Maps a chain of nearest-neighbour XX/YY bonds and z fields to Majoranas.
pub fn jordan_wigner(model: &ChainModel) -> Result<QuadraticModel> {
    use PauliLabel::*;
    let n = model.n_sites();
    let mut qm = QuadraticModel { n, a: Mat::zeros(2 * n, 2 * n) };
    for t in model.terms() {
        let f = t.factors.factors();
        match f {
            [(l, Z)] => qm.add_ab(*l, *l, -2.0 * t.coeff),
            [(l, X), (m, X)] if m == &(l + 1) => qm.add_ab(l + 1, *l, 2.0 * t.coeff),
            [(l, Y), (m, Y)] if m == &(l + 1) => qm.add_ab(*l, l + 1, 2.0 * t.coeff),
            _ => return Err(Error::NotQuadratic { term: t.to_string() }),
        }
    }
    Ok(qm)
}

/// Whether every term is a nearest-neighbour XX/YY bond or a z field.
pub fn is_quadratic(model: &ChainModel) -> bool {
    jordan_wigner(model).is_ok()
}

/// Ground-state Majorana covariance `Γ_pq = i⟨c_p c_q⟩` (p ≠ q).
#[derive(Clone, Debug)]
pub struct MajoranaCovariance {
    n: usize,
    m: Mat<f64>,
}

impl MajoranaCovariance {
    pub fn n_sites(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Mat<f64> {
        &self.m
    }

    #[inline]
    pub fn get(&self, p: usize, q: usize) -> f64 {
        self.m[(p, q)]
    }
}

/// Ground state of a quadratic model.
#[derive(Clone, Debug)]
pub struct FreeFermionSolution {
    pub covariance: MajoranaCovariance,
    /// Single-particle energies `ε_m = σ_m / 2`, ascending; flipping mode
    /// `m` costs `2 ε_m`.
    pub energies: Vec<f64>,
    pub ground_energy: f64,
}

impl FreeFermionSolution {
    /// Many-body gap `2 ε_min`.
    pub fn gap(&self) -> f64 {
        2.0 * self.energies[0]
    }
}

pub fn solve(qm: &QuadraticModel) -> Result<FreeFermionSolution> {
    solve_with_tol(qm, DEFAULT_ZERO_MODE_TOL)
}

pub fn solve_with_tol(qm: &QuadraticModel, zero_mode_tol: f64) -> Result<FreeFermionSolution> {
    let n = qm.n;
    if n == 0 {
        return Err(Error::InvalidParameter("empty chain".into()));
    }
    let w = qm.coupling_block();
    let svd = w.svd().map_err(|e| Error::Eigensolver(format!("SVD failed: {e:?}")))?;
    let sigma: Vec<f64> = svd.S().column_vector().iter().copied().collect();
    let mut energies: Vec<f64> = sigma.iter().map(|s| 0.5 * s).collect();
    energies.sort_by(f64::total_cmp);
    if energies[0] < zero_mode_tol {
        return Err(Error::ZeroMode { energy: energies[0] });
    }
    // Γ(a, b) = -U Vᵀ
    let uvt = svd.U() * svd.V().transpose();
    let mut m = Mat::<f64>::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let v = -uvt[(j, k)];
            m[(2 * j, 2 * k + 1)] = v;
            m[(2 * k + 1, 2 * j)] = -v;
        }
    }
    Ok(FreeFermionSolution {
        covariance: MajoranaCovariance { n, m },
        ground_energy: -energies.iter().sum::<f64>(),
        energies,
    })
}

pub fn ground_covariance(qm: &QuadraticModel) -> Result<MajoranaCovariance> {
    Ok(solve(qm)?.covariance)
}

pub fn single_particle_gap(qm: &QuadraticModel) -> Result<f64> {
    Ok(solve(qm)?.gap())
}

/// Product of Majoranas `phase * c_{i1} c_{i2} ...`.
#[derive(Clone, Debug)]
struct MajoranaString {
    phase: C64,
    ops: Vec<usize>,
}

impl MajoranaString {
    fn one() -> Self {
        Self { phase: C64::new(1.0, 0.0), ops: Vec::new() }
    }

    /// σ^μ on `site` in Majoranas.
    fn pauli(site: usize, label: PauliLabel) -> Self {
        let mut s = Self::one();
        match label {
            PauliLabel::I => {}
            PauliLabel::Z => {
                s.phase = C64::new(0.0, -1.0);
                s.ops = vec![2 * site, 2 * site + 1];
            }
            PauliLabel::X | PauliLabel::Y => {
                // S_l = Π_{m<l} (-i a_m b_m)
                s.phase = C64::new(0.0, -1.0).powu(site as u32);
                s.ops = (0..2 * site).collect();
                s.ops.push(if label == PauliLabel::X { 2 * site } else { 2 * site + 1 });
            }
        }
        s
    }

    fn mul(&self, other: &Self) -> Self {
        let mut ops = self.ops.clone();
        ops.extend_from_slice(&other.ops);
        let mut s = Self { phase: self.phase * other.phase, ops };
        s.normalize();
        s
    }

    /// Sorts with the anticommutation sign and cancels `c² = 1`.
    fn normalize(&mut self) {
        let mut swaps = 0usize;
        let v = &mut self.ops;
        // insertion sort; strings are already nearly sorted
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if swaps % 2 == 1 {
            self.phase = -self.phase;
        }
        let mut out: Vec<usize> = Vec::with_capacity(v.len());
        for &x in v.iter() {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        *v = out;
    }
}

/// `⟨phase * c_{i1} ... c_{i2k}⟩ = phase (-i)^k Pf(Γ_sub)` by Wick's theorem.
fn wick(cov: &MajoranaCovariance, s: &MajoranaString) -> Result<C64> {
    let len = s.ops.len();
    if len == 0 {
        return Ok(s.phase);
    }
    if len % 2 == 1 {
        return Ok(C64::new(0.0, 0.0));
    }
    // Γ has only a-b entries, so unequal counts vanish
    let n_a = s.ops.iter().filter(|&&p| p % 2 == 0).count();
    if 2 * n_a != len {
        return Ok(C64::new(0.0, 0.0));
    }
    let sub = Mat::from_fn(len, len, |r, c| if r == c { 0.0 } else { cov.get(s.ops[r], s.ops[c]) });
    let pf = pfaffian(&sub)?;
    Ok(s.phase * C64::new(0.0, -1.0).powu((len / 2) as u32) * pf)
}

/// `⟨σ_a^μ σ_b^ν⟩` for all μ, ν in (0, x, y, z).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinCorrelators {
    pub c: [[f64; 4]; 4],
}

pub fn spin_correlators(cov: &MajoranaCovariance, probes: ProbePair) -> Result<SpinCorrelators> {
    let n = cov.n_sites();
    for s in [probes.a, probes.b] {
        if s >= n {
            return Err(Error::SiteOutOfRange { site: s, n_sites: n });
        }
    }
    let mut c = [[0.0; 4]; 4];
    for (mu, pa) in PauliLabel::ALL.into_iter().enumerate() {
        let sa = MajoranaString::pauli(probes.a, pa);
        for (nu, pb) in PauliLabel::ALL.into_iter().enumerate() {
            let prod = sa.mul(&MajoranaString::pauli(probes.b, pb));
            let v = wick(cov, &prod)?;
            if v.im.abs() > 1e-8 {
                return Err(Error::ComplexExpectation(v.im));
            }
            c[mu][nu] = v.re;
        }
    }
    Ok(SpinCorrelators { c })
}

/// Two-site reduced state with the size of the positivity correction.
#[derive(Clone, Debug)]
pub struct ProjectedState {
    pub rho: DensityMatrix,
    pub correlators: SpinCorrelators,
    /// Frobenius norm of the change made by clipping negative eigenvalues.
    pub correction: f64,
}

/// `ρ_ab = ¼ Σ ⟨σ_a^μ σ_b^ν⟩ σ^μ ⊗ σ^ν`, clipped to the nearest valid state
/// when eigenvalues dip below zero by at most 1e-9.
pub fn two_site_rdm(cov: &MajoranaCovariance, probes: ProbePair) -> Result<ProjectedState> {
    let correlators = spin_correlators(cov, probes)?;
    let mut m = tensor_to_matrix(&correlators.c);
    let mut correction = 0.0;
    let eig = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let vals: Vec<f64> = eig.S().column_vector().iter().map(|z| z.re).collect();
    if vals[0] < -PSD_TOL {
        return Err(Error::InvalidState(format!("two-site state has eigenvalue {:e}", vals[0])));
    }
    if vals[0] < 0.0 {
        let clipped: Vec<f64> = vals.iter().map(|v| v.max(0.0)).collect();
        let tr: f64 = clipped.iter().sum();
        let u = eig.U();
        let fixed = Mat::from_fn(4, 4, |i, j| {
            (0..4).map(|k| u[(i, k)] * u[(j, k)].conj() * (clipped[k] / tr)).sum::<C64>()
        });
        correction = (&fixed - &m).norm_l2();
        m = fixed;
    }
    Ok(ProjectedState { rho: DensityMatrix::new(2, m)?, correlators, correction })
}

/// Reduced state of the two end spins.
pub fn end_to_end_rdm(cov: &MajoranaCovariance) -> Result<ProjectedState> {
    two_site_rdm(cov, ProbePair::ends(cov.n_sites())?)
}
