//! Dense exact diagonalization: operator assembly, spectra, ground and
//! thermal states, partial traces and gaps.
//!
//! Basis convention: site 0 is the most significant tensor factor, and bit 0
//! of a site is the σ^z = +1 state. A basis index `i` of an `n`-site chain
//! therefore carries site `s` in bit `n - 1 - s`.

use faer::{Mat, Side};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::model::ChainModel;
use crate::{Error, Result};

/// Default cap on the number of sites for dense assembly (dimension 16384).
pub const DEFAULT_DENSE_CAP: usize = 14;

/// Absolute tolerance used to group eigenvalues into the ground manifold.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

const HERMITIAN_REL_TOL: f64 = 1e-12;
const STATE_TOL: f64 = 1e-10;

/// Matrix entries, kept real when the operator has no imaginary part.
#[derive(Clone, Debug)]
pub enum Entries {
    Real(Mat<f64>),
    Complex(Mat<C64>),
}

impl Entries {
    pub fn nrows(&self) -> usize {
        match self {
            Entries::Real(m) => m.nrows(),
            Entries::Complex(m) => m.nrows(),
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            Entries::Real(m) => m.ncols(),
            Entries::Complex(m) => m.ncols(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        match self {
            Entries::Real(m) => C64::new(m[(i, j)], 0.0),
            Entries::Complex(m) => m[(i, j)],
        }
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.nrows()).map(|i| self.get(i, j)).collect()
    }

    pub fn to_complex(&self) -> Mat<C64> {
        match self {
            Entries::Real(m) => Mat::from_fn(m.nrows(), m.ncols(), |i, j| C64::new(m[(i, j)], 0.0)),
            Entries::Complex(m) => m.clone(),
        }
    }
}

/// A `2^n x 2^n` operator on an `n`-site chain.
#[derive(Clone, Debug)]
pub struct DenseOperator {
    n_sites: usize,
    entries: Entries,
    hermitian: bool,
}

impl DenseOperator {
    /// Wraps a complex matrix and tags it Hermitian when
    /// `max|A - A†| <= 1e-12 max|A|`.
    pub fn from_complex(n_sites: usize, m: Mat<C64>) -> Result<Self> {
        let dim = 1usize << n_sites;
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: m.nrows() });
        }
        let entries = Entries::Complex(m);
        let hermitian = hermitian_deviation(&entries) <= HERMITIAN_REL_TOL * max_abs(&entries);
        Ok(Self { n_sites, entries, hermitian })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries.get(i, j)
    }

    pub fn to_complex(&self) -> Mat<C64> {
        self.entries.to_complex()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.entries)
    }

    pub fn dump(&self) -> MatrixDump {
        MatrixDump::from_fn(self.dim(), |i, j| self.get(i, j))
    }
}

fn max_abs(e: &Entries) -> f64 {
    let n = e.nrows();
    let mut m = 0.0f64;
    for j in 0..e.ncols() {
        for i in 0..n {
            m = m.max(e.get(i, j).norm());
        }
    }
    m
}

fn hermitian_deviation(e: &Entries) -> f64 {
    let n = e.nrows();
    let mut m = 0.0f64;
    for j in 0..n {
        for i in 0..=j {
            m = m.max((e.get(i, j) - e.get(j, i).conj()).norm());
        }
    }
    m
}

/// Row-major matrix with interleaved (re, im) entries, for debugging dumps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl MatrixDump {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(2 * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let z = f(i, j);
                data.push(z.re);
                data.push(z.im);
            }
        }
        Self { dim, data }
    }
}

/// Kronecker assembly of the term sum with the default cap.
pub fn to_dense(model: &ChainModel) -> Result<DenseOperator> {
    to_dense_with_cap(model, DEFAULT_DENSE_CAP)
}

pub fn to_dense_with_cap(model: &ChainModel, cap: usize) -> Result<DenseOperator> {
    let n = model.n_sites();
    if n > cap {
        return Err(Error::DenseCapExceeded { n_sites: n, cap });
    }
    let dim = 1usize << n;
    let entries = if model.is_real() {
        let mut m = Mat::<f64>::zeros(dim, dim);
        for t in model.terms() {
            for col in 0..dim {
                let (ph, row) = t.factors.apply(col, n);
                m[(row, col)] += t.coeff * ph.re;
            }
        }
        Entries::Real(m)
    } else {
        let mut m = Mat::<C64>::zeros(dim, dim);
        for t in model.terms() {
            for col in 0..dim {
                let (ph, row) = t.factors.apply(col, n);
                m[(row, col)] += ph * t.coeff;
            }
        }
        Entries::Complex(m)
    };
    Ok(DenseOperator { n_sites: n, entries, hermitian: true })
}

/// Full spectrum in ascending order with orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Entries,
}

impl SpectralDecomposition {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }
}

pub fn eigh(op: &DenseOperator) -> Result<SpectralDecomposition> {
    if !op.hermitian {
        return Err(Error::NotHermitian(hermitian_deviation(&op.entries)));
    }
    match &op.entries {
        Entries::Real(m) => {
            let e = m
                .self_adjoint_eigen(Side::Lower)
                .map_err(|e| Error::Eigensolver(format!("{e:?} (real, dim {})", m.nrows())))?;
            let eigenvalues = e.S().column_vector().iter().copied().collect();
            Ok(SpectralDecomposition { eigenvalues, eigenvectors: Entries::Real(e.U().to_owned()) })
        }
        Entries::Complex(m) => {
            let e = m
                .self_adjoint_eigen(Side::Lower)
                .map_err(|e| Error::Eigensolver(format!("{e:?} (complex, dim {})", m.nrows())))?;
            let eigenvalues = e.S().column_vector().iter().map(|z| z.re).collect();
            Ok(SpectralDecomposition {
                eigenvalues,
                eigenvectors: Entries::Complex(e.U().to_owned()),
            })
        }
    }
}

pub fn eigvalsh(op: &DenseOperator) -> Result<Vec<f64>> {
    if !op.hermitian {
        return Err(Error::NotHermitian(hermitian_deviation(&op.entries)));
    }
    let vals = match &op.entries {
        Entries::Real(m) => m.self_adjoint_eigenvalues(Side::Lower),
        Entries::Complex(m) => m
            .self_adjoint_eigenvalues(Side::Lower)
            .map(|v| v.into_iter().collect::<Vec<f64>>()),
    };
    vals.map_err(|e| Error::Eigensolver(format!("{e:?}")))
}

/// Lowest eigenvalue, its degeneracy under `tol`, and the ground vectors.
#[derive(Clone, Debug)]
pub struct GroundSpace {
    pub energy: f64,
    pub degeneracy: usize,
    pub tol: f64,
    /// First eigenvalue above the ground manifold.
    pub next_energy: Option<f64>,
    pub vectors: Vec<Vec<C64>>,
}

impl GroundSpace {
    pub fn from_spectrum(spec: &SpectralDecomposition, tol: f64) -> Self {
        let e0 = spec.eigenvalues[0];
        let d = spec.eigenvalues.iter().take_while(|&&e| e - e0 <= tol).count();
        Self {
            energy: e0,
            degeneracy: d,
            tol,
            next_energy: spec.eigenvalues.get(d).copied(),
            vectors: (0..d).map(|k| spec.vector(k)).collect(),
        }
    }
}

pub fn ground_space(op: &DenseOperator, tol: f64) -> Result<GroundSpace> {
    Ok(GroundSpace::from_spectrum(&eigh(op)?, tol))
}

/// Density matrix on `n_sites` sites.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    n_sites: usize,
    data: Mat<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity to 1e-10.
    pub fn new(n_sites: usize, data: Mat<C64>) -> Result<Self> {
        let dim = 1usize << n_sites;
        if data.nrows() != dim || data.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: data.nrows() });
        }
        let dm = Self { n_sites, data };
        dm.validate()?;
        Ok(dm)
    }

    pub fn validate(&self) -> Result<()> {
        let e = Entries::Complex(self.data.clone());
        let dev = hermitian_deviation(&e);
        if dev > STATE_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {dev:e})")));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min = self.eigenvalues()?[0];
        if min < -STATE_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// `|ψ⟩⟨ψ|` for a normalized vector.
    pub fn from_pure(n_sites: usize, psi: &[C64]) -> Result<Self> {
        Self::mixture(n_sites, &[psi.to_vec()], &[1.0])
    }

    /// `Σ_k w_k |ψ_k⟩⟨ψ_k|`.
    pub fn mixture(n_sites: usize, vectors: &[Vec<C64>], weights: &[f64]) -> Result<Self> {
        let dim = 1usize << n_sites;
        let mut m = Mat::<C64>::zeros(dim, dim);
        for (v, &w) in vectors.iter().zip(weights) {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            for j in 0..dim {
                let cj = v[j].conj() * w;
                if cj == C64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..dim {
                    m[(i, j)] += v[i] * cj;
                }
            }
        }
        Self::new(n_sites, m)
    }

    pub fn maximally_mixed(n_sites: usize) -> Self {
        let dim = 1usize << n_sites;
        let w = 1.0 / dim as f64;
        Self { n_sites, data: Mat::from_fn(dim, dim, |i, j| if i == j { C64::new(w, 0.0) } else { C64::new(0.0, 0.0) }) }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &Mat<C64> {
        &self.data
    }

    pub fn into_matrix(self) -> Mat<C64> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[(i, j)]
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.data[(i, i)]).sum()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.data
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Eigensolver(format!("{e:?}")))
    }

    pub fn dump(&self) -> MatrixDump {
        MatrixDump::from_fn(self.dim(), |i, j| self.get(i, j))
    }
}

pub fn ground_state_dm(op: &DenseOperator, degeneracy_tol: f64) -> Result<DensityMatrix> {
    let gs = ground_space(op, degeneracy_tol)?;
    let w = vec![1.0 / gs.degeneracy as f64; gs.degeneracy];
    DensityMatrix::mixture(op.n_sites(), &gs.vectors, &w)
}

/// Reduced state on `keep` of the uniform ground-manifold mixture, traced
/// directly from the ground vectors.
pub fn reduced_ground_state(op: &DenseOperator, keep: &[usize], degeneracy_tol: f64) -> Result<DensityMatrix> {
    let gs = ground_space(op, degeneracy_tol)?;
    reduced_from_space(&gs, op.n_sites(), keep)
}

pub fn reduced_from_space(gs: &GroundSpace, n_sites: usize, keep: &[usize]) -> Result<DensityMatrix> {
    let w = 1.0 / gs.degeneracy as f64;
    let weights = vec![w; gs.degeneracy];
    reduced_from_vectors(n_sites, &gs.vectors, &weights, keep)
}

struct SiteSplit {
    kept_dim: usize,
    rest_dim: usize,
    /// `index[r * kept_dim + a]` = full basis index for kept config `a`, rest config `r`.
    index: Vec<usize>,
}

fn site_split(n_sites: usize, keep: &[usize]) -> Result<SiteSplit> {
    for (k, &s) in keep.iter().enumerate() {
        if s >= n_sites {
            return Err(Error::SiteOutOfRange { site: s, n_sites });
        }
        if keep[..k].contains(&s) {
            return Err(Error::InvalidParameter(format!("site {} kept twice", s + 1)));
        }
    }
    let rest: Vec<usize> = (0..n_sites).filter(|s| !keep.contains(s)).collect();
    let kept_dim = 1usize << keep.len();
    let rest_dim = 1usize << rest.len();
    let mut index = vec![0usize; kept_dim * rest_dim];
    for r in 0..rest_dim {
        let mut base = 0usize;
        for (k, &s) in rest.iter().enumerate() {
            if (r >> (rest.len() - 1 - k)) & 1 == 1 {
                base |= 1 << (n_sites - 1 - s);
            }
        }
        for a in 0..kept_dim {
            let mut i = base;
            for (k, &s) in keep.iter().enumerate() {
                if (a >> (keep.len() - 1 - k)) & 1 == 1 {
                    i |= 1 << (n_sites - 1 - s);
                }
            }
            index[r * kept_dim + a] = i;
        }
    }
    Ok(SiteSplit { kept_dim, rest_dim, index })
}

/// Reduced state of `Σ_k w_k |ψ_k⟩⟨ψ_k|` on `keep`, ordered as given.
pub fn reduced_from_vectors(
    n_sites: usize,
    vectors: &[Vec<C64>],
    weights: &[f64],
    keep: &[usize],
) -> Result<DensityMatrix> {
    let split = site_split(n_sites, keep)?;
    let kd = split.kept_dim;
    let mut out = Mat::<C64>::zeros(kd, kd);
    for (v, &w) in vectors.iter().zip(weights) {
        if v.len() != 1 << n_sites {
            return Err(Error::DimensionMismatch { expected: 1 << n_sites, got: v.len() });
        }
        for r in 0..split.rest_dim {
            let idx = &split.index[r * kd..(r + 1) * kd];
            for b in 0..kd {
                let cb = v[idx[b]].conj() * w;
                for a in 0..kd {
                    out[(a, b)] += v[idx[a]] * cb;
                }
            }
        }
    }
    DensityMatrix::new(keep.len(), out)
}

/// Reduced density matrix on `keep_sites`, in the order given.
pub fn partial_trace_keep(dm: &DensityMatrix, keep_sites: &[usize]) -> Result<DensityMatrix> {
    let split = site_split(dm.n_sites(), keep_sites)?;
    let kd = split.kept_dim;
    let mut out = Mat::<C64>::zeros(kd, kd);
    for r in 0..split.rest_dim {
        let idx = &split.index[r * kd..(r + 1) * kd];
        for b in 0..kd {
            for a in 0..kd {
                out[(a, b)] += dm.get(idx[a], idx[b]);
            }
        }
    }
    DensityMatrix::new(keep_sites.len(), out)
}

/// Gibbs state `e^{-βH}/Z` through the spectrum, shifted by the ground energy.
pub fn gibbs(op: &DenseOperator, beta: f64) -> Result<DensityMatrix> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!("beta must be finite and >= 0, got {beta}")));
    }
    let spec = eigh(op)?;
    let e0 = spec.eigenvalues[0];
    let w: Vec<f64> = spec.eigenvalues.iter().map(|e| (-beta * (e - e0)).exp()).collect();
    let z: f64 = w.iter().sum();
    let dim = op.dim();
    let mut m = Mat::<C64>::zeros(dim, dim);
    for (k, wk) in w.iter().enumerate() {
        let p = wk / z;
        if p < 1e-300 {
            continue;
        }
        let v = spec.vector(k);
        for j in 0..dim {
            let cj = v[j].conj() * p;
            for i in 0..dim {
                m[(i, j)] += v[i] * cj;
            }
        }
    }
    DensityMatrix::new(op.n_sites(), m)
}

/// First excitation energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyGap {
    /// `E_1 - E_0`; zero when the ground level is degenerate.
    pub value: f64,
    pub degeneracy: usize,
    /// Distance from the ground manifold to the next level.
    pub above_manifold: f64,
}

pub fn energy_gap(op: &DenseOperator, degeneracy_tol: f64) -> Result<EnergyGap> {
    let vals = eigvalsh(op)?;
    Ok(gap_from_eigenvalues(&vals, degeneracy_tol))
}

pub fn gap_from_eigenvalues(vals: &[f64], tol: f64) -> EnergyGap {
    let e0 = vals[0];
    let d = vals.iter().take_while(|&&e| e - e0 <= tol).count();
    let above = vals.get(d).map(|e| e - e0).unwrap_or(0.0);
    if d > 1 {
        log::debug!("ground level is {d}-fold degenerate; reporting zero gap");
    }
    EnergyGap { value: if d > 1 { 0.0 } else { above }, degeneracy: d, above_manifold: above }
}

/// `Re tr(ρA)`.
pub fn expectation(dm: &DensityMatrix, op: &DenseOperator) -> Result<f64> {
    if dm.dim() != op.dim() {
        return Err(Error::DimensionMismatch { expected: dm.dim(), got: op.dim() });
    }
    if !op.is_hermitian() {
        return Err(Error::NotHermitian(hermitian_deviation(&op.entries)));
    }
    let dim = dm.dim();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..dim {
        for j in 0..dim {
            acc += dm.get(i, j) * op.get(j, i);
        }
    }
    if acc.im.abs() > 1e-10 * acc.re.abs().max(1.0) {
        return Err(Error::ComplexExpectation(acc.im));
    }
    Ok(acc.re)
}

/// `½ ‖ρ - σ‖_1`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    let d = a.matrix() - b.matrix();
    let vals = d
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    Ok(0.5 * vals.iter().map(|v| v.abs()).sum::<f64>())
}
