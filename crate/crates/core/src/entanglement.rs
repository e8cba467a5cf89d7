//! Two-qubit correlation measures: concurrence, entropies, discord and the
//! block criterion for zero discord.
//!
//! Two-spin states are 4x4 [`DensityMatrix`] values whose first qubit is the
//! most significant. All entropies are in nats.

use std::f64::consts::PI;
use std::fmt;

use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use crate::exact::DensityMatrix;
use crate::model::PauliLabel;
use crate::{Error, Result, C64};

/// Eigenvalues of ρ below this are treated as numerical zero.
const RANK_TOL: f64 = 1e-13;
/// Eigenvalues of ρ below `-NEG_TOL` are an error.
const NEG_TOL: f64 = 1e-10;

/// Default block-criterion tolerance on commutator Frobenius norms.
pub const DEFAULT_ZERO_DISCORD_TOL: f64 = 1e-8;

type M2 = [[C64; 2]; 2];

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn require_two_spin(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.dim() });
    }
    Ok(())
}

/// `tr(ρ σ^μ ⊗ σ^ν)` for μ, ν in (0, x, y, z).
pub fn correlation_tensor(rho: &DensityMatrix) -> Result<[[f64; 4]; 4]> {
    require_two_spin(rho)?;
    Ok(pauli_components(rho.matrix()))
}

/// `Re tr(M σ^μ ⊗ σ^ν)` of a 4x4 matrix.
pub(crate) fn pauli_components(m: &Mat<C64>) -> [[f64; 4]; 4] {
    let mut t = [[0.0; 4]; 4];
    for (mu, pa) in PauliLabel::ALL.into_iter().enumerate() {
        for (nu, pb) in PauliLabel::ALL.into_iter().enumerate() {
            let op = kron(&pa.matrix(), &pb.matrix());
            let mut acc = zero();
            for i in 0..4 {
                for j in 0..4 {
                    acc += m[(i, j)] * op[j][i];
                }
            }
            t[mu][nu] = acc.re;
        }
    }
    t
}

/// `ρ = ¼ Σ T_μν σ^μ ⊗ σ^ν`, validated as a density matrix.
pub fn from_correlation_tensor(t: &[[f64; 4]; 4]) -> Result<DensityMatrix> {
    DensityMatrix::new(2, tensor_to_matrix(t))
}

pub(crate) fn tensor_to_matrix(t: &[[f64; 4]; 4]) -> Mat<C64> {
    let mut m = Mat::<C64>::zeros(4, 4);
    for (mu, pa) in PauliLabel::ALL.into_iter().enumerate() {
        for (nu, pb) in PauliLabel::ALL.into_iter().enumerate() {
            if t[mu][nu] == 0.0 {
                continue;
            }
            let op = kron(&pa.matrix(), &pb.matrix());
            for i in 0..4 {
                for j in 0..4 {
                    m[(i, j)] += op[i][j] * (0.25 * t[mu][nu]);
                }
            }
        }
    }
    m
}

fn kron(a: &M2, b: &M2) -> [[C64; 4]; 4] {
    let mut out = [[zero(); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `(U_1 ⊗ U_2) ρ (U_1 ⊗ U_2)†`.
pub fn apply_local_unitaries(rho: &DensityMatrix, u1: &M2, u2: &M2) -> Result<DensityMatrix> {
    require_two_spin(rho)?;
    let u = kron(u1, u2);
    let um = Mat::from_fn(4, 4, |i, j| u[i][j]);
    let out = &um * rho.matrix() * um.adjoint();
    DensityMatrix::new(2, out)
}

/// Exchanges the two qubits.
pub fn swap_qubits(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_two_spin(rho)?;
    let p = [0usize, 2, 1, 3];
    DensityMatrix::new(2, Mat::from_fn(4, 4, |i, j| rho.get(p[i], p[j])))
}

/// Wootters concurrence.
///
/// The λ_i are the square roots of the eigenvalues of
/// `R = ρ (σ^y⊗σ^y) ρ* (σ^y⊗σ^y)`, obtained as the singular values of
/// `Wᵀ (σ^y⊗σ^y) W` with `ρ = W W†`. Eigenvalues of ρ in (-1e-10, 1e-13]
/// are dropped; more negative ones are an error.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_spin(rho)?;
    let eig = rho
        .matrix()
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let vals: Vec<f64> = eig.S().column_vector().iter().map(|z| z.re).collect();
    let u = eig.U();
    let mut cols = Vec::new();
    for (k, &p) in vals.iter().enumerate() {
        if p < -NEG_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {p:e}")));
        }
        if p > RANK_TOL {
            cols.push((k, p.sqrt()));
        }
    }
    let r = cols.len();
    if r == 0 {
        return Err(Error::InvalidState("zero matrix".into()));
    }
    // σ^y⊗σ^y = antidiagonal (-1, 1, 1, -1)
    let yy = [-1.0, 1.0, 1.0, -1.0];
    let w = Mat::from_fn(4, r, |i, c| u[(i, cols[c].0)] * cols[c].1);
    let tau = Mat::from_fn(r, r, |a, b| {
        let mut acc = zero();
        for i in 0..4 {
            acc += w[(i, a)] * yy[i] * w[(3 - i, b)];
        }
        acc
    });
    let mut lambda = tau
        .singular_values()
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    lambda.sort_by(|a, b| b.total_cmp(a));
    let c = lambda[0] - lambda[1..].iter().sum::<f64>();
    Ok(c.clamp(0.0, 1.0))
}

/// `-Σ p ln p` over the spectrum, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(dm: &DensityMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&dm.eigenvalues()?))
}

pub fn entropy_of_spectrum(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

/// Entropy of a qubit with Bloch vector length `r`.
fn qubit_entropy(r: f64) -> f64 {
    let r = r.clamp(0.0, 1.0);
    entropy_of_spectrum(&[0.5 * (1.0 + r), 0.5 * (1.0 - r)])
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// `S(ρ_1) + S(ρ_2) - S(ρ_12)`.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let t = correlation_tensor(rho)?;
    let a = [t[1][0], t[2][0], t[3][0]];
    let b = [t[0][1], t[0][2], t[0][3]];
    Ok(qubit_entropy(norm3(a)) + qubit_entropy(norm3(b)) - von_neumann_entropy(rho)?)
}

/// Which spin the projective measurement acts on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasuredSpin {
    #[default]
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordOptions {
    /// Grid points per angle; at least 16.
    pub grid: usize,
    pub refine_rounds: usize,
    pub measure: MeasuredSpin,
    pub zero_discord_tol: f64,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self { grid: 64, refine_rounds: 3, measure: MeasuredSpin::First, zero_discord_tol: DEFAULT_ZERO_DISCORD_TOL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscordReport {
    pub mutual_info: f64,
    pub classical_info: f64,
    pub discord: f64,
    /// Bloch angles (θ, φ) of the optimal measurement axis.
    pub optimal_measurement: (f64, f64),
    pub measured: MeasuredSpin,
    /// Block criterion for the same measured spin.
    pub zero_discord: bool,
    pub witness: Option<ZeroDiscordWitness>,
}

/// Bloch data of a two-qubit state seen from the measured spin `m` and the
/// unmeasured spin `u`.
struct BlochData {
    a: [f64; 3],
    b: [f64; 3],
    /// `t[i][j] = tr(ρ σ^i_m ⊗ σ^j_u)`.
    t: [[f64; 3]; 3],
}

impl BlochData {
    fn new(t4: &[[f64; 4]; 4], measure: MeasuredSpin) -> Self {
        let mut a = [0.0; 3];
        let mut b = [0.0; 3];
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            match measure {
                MeasuredSpin::First => {
                    a[i] = t4[i + 1][0];
                    b[i] = t4[0][i + 1];
                }
                MeasuredSpin::Second => {
                    a[i] = t4[0][i + 1];
                    b[i] = t4[i + 1][0];
                }
            }
            for j in 0..3 {
                t[i][j] = match measure {
                    MeasuredSpin::First => t4[i + 1][j + 1],
                    MeasuredSpin::Second => t4[j + 1][i + 1],
                };
            }
        }
        Self { a, b, t }
    }

    /// Average conditional entropy of the unmeasured spin after measuring
    /// along the axis with Bloch angles (θ, φ).
    fn conditional_entropy(&self, theta: f64, phi: f64) -> f64 {
        let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        let na = n[0] * self.a[0] + n[1] * self.a[1] + n[2] * self.a[2];
        let mut tn = [0.0; 3];
        for (j, v) in tn.iter_mut().enumerate() {
            *v = (0..3).map(|i| self.t[i][j] * n[i]).sum();
        }
        let mut acc = 0.0;
        for s in [1.0, -1.0] {
            let p = 0.5 * (1.0 + s * na);
            if p <= 1e-15 {
                continue;
            }
            // p_s r_s = (b + s Tᵀn) / 2
            let r = [
                (self.b[0] + s * tn[0]) / (2.0 * p),
                (self.b[1] + s * tn[1]) / (2.0 * p),
                (self.b[2] + s * tn[2]) / (2.0 * p),
            ];
            acc += p * qubit_entropy(norm3(r));
        }
        acc
    }
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if hi - lo < 1e-12 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Discord `I - J` with `J` maximized over projective measurements on one
/// spin: a `grid x grid` scan of the Bloch sphere followed by golden-section
/// refinement of each angle.
pub fn discord(rho: &DensityMatrix, opts: &DiscordOptions) -> Result<DiscordReport> {
    if opts.grid < 16 {
        return Err(Error::InvalidParameter(format!("discord grid {} < 16", opts.grid)));
    }
    let t4 = correlation_tensor(rho)?;
    let data = BlochData::new(&t4, opts.measure);
    let s_ab = von_neumann_entropy(rho)?;
    let s_m = qubit_entropy(norm3(data.a));
    let s_u = qubit_entropy(norm3(data.b));

    let g = opts.grid;
    let dt = PI / g as f64;
    let dp = 2.0 * PI / g as f64;
    let (mut theta, mut phi, mut best) = (0.0, 0.0, f64::INFINITY);
    for i in 0..g {
        let th = (i as f64 + 0.5) * dt;
        for j in 0..g {
            let ph = j as f64 * dp;
            let v = data.conditional_entropy(th, ph);
            if v < best {
                (theta, phi, best) = (th, ph, v);
            }
        }
    }
    for _ in 0..opts.refine_rounds {
        let (th, v) = golden_min(|x| data.conditional_entropy(x, phi), theta - dt, theta + dt);
        if v < best {
            (theta, best) = (th, v);
        }
        let (ph, v) = golden_min(|x| data.conditional_entropy(theta, x), phi - dp, phi + dp);
        if v < best {
            (phi, best) = (ph, v);
        }
    }
    let theta_n = theta.rem_euclid(2.0 * PI);
    let (theta, phi) = if theta_n > PI { (2.0 * PI - theta_n, phi + PI) } else { (theta_n, phi) };

    let mutual_info = s_m + s_u - s_ab;
    let classical_info = s_u - best;
    // the block criterion on first-qubit blocks certifies a measurement of the second qubit
    let check = match opts.measure {
        MeasuredSpin::First => zero_discord_test(&swap_qubits(rho)?, opts.zero_discord_tol)?,
        MeasuredSpin::Second => zero_discord_test(rho, opts.zero_discord_tol)?,
    };
    Ok(DiscordReport {
        mutual_info,
        classical_info,
        discord: mutual_info - classical_info,
        optimal_measurement: (theta, phi.rem_euclid(2.0 * PI)),
        measured: opts.measure,
        zero_discord: check.zero_discord,
        witness: check.witness,
    })
}

/// Which block condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockCondition {
    /// `[ρ^{ij}, (ρ^{ij})†] ≠ 0`.
    Normality,
    /// `[ρ^{ij}, ρ^{i'j'}] ≠ 0`.
    Commutation,
}

/// First violated block condition. Block labels are 1-based as in `ρ^{12}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroDiscordWitness {
    pub condition: BlockCondition,
    pub first: (usize, usize),
    pub second: (usize, usize),
    /// Frobenius norm of the commutator.
    pub norm: f64,
    /// `first * second`, row-major (re, im) pairs.
    pub product: [[(f64, f64); 2]; 2],
    /// `second * first`.
    pub reverse_product: [[(f64, f64); 2]; 2],
}

impl fmt::Display for ZeroDiscordWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.first;
        let (k, l) = self.second;
        match self.condition {
            BlockCondition::Normality => {
                write!(f, "[rho^{i}{j}, (rho^{i}{j})^dag] != 0 (norm {:.3e})", self.norm)
            }
            BlockCondition::Commutation => {
                write!(f, "[rho^{i}{j}, rho^{k}{l}] != 0 (norm {:.3e})", self.norm)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroDiscordCheck {
    pub zero_discord: bool,
    pub witness: Option<ZeroDiscordWitness>,
}

fn mul2(a: &M2, b: &M2) -> M2 {
    let mut out = [[zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn dagger2(a: &M2) -> M2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn to_pairs(a: &M2) -> [[(f64, f64); 2]; 2] {
    a.map(|row| row.map(|z| (z.re, z.im)))
}

/// The 2x2 blocks `ρ^{ij} = ⟨i| ρ |j⟩` with respect to the first qubit.
pub fn blocks(rho: &DensityMatrix) -> Result<[[M2; 2]; 2]> {
    require_two_spin(rho)?;
    let mut out = [[[[zero(); 2]; 2]; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, blk) in row.iter_mut().enumerate() {
            for k in 0..2 {
                for l in 0..2 {
                    blk[k][l] = rho.get(2 * i + k, 2 * j + l);
                }
            }
        }
    }
    Ok(out)
}

/// Block criterion on the first-qubit blocks: all blocks normal and
/// pairwise commuting. Conditions are checked in order (normality of each
/// block, then pairs in lexicographic order) and the first failure is
/// returned as the witness.
///
/// When it holds, the blocks share an eigenbasis on the second qubit, so a
/// measurement of the second qubit in that basis leaves ρ unchanged.
pub fn zero_discord_test(rho: &DensityMatrix, tol: f64) -> Result<ZeroDiscordCheck> {
    let b = blocks(rho)?;
    let labels = [(0usize, 0usize), (0, 1), (1, 0), (1, 1)];
    let frob = |x: &M2, y: &M2| -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += (x[i][j] - y[i][j]).norm_sqr();
            }
        }
        s.sqrt()
    };
    let witness = |condition, p: (usize, usize), q: (usize, usize), ab: &M2, ba: &M2| ZeroDiscordWitness {
        condition,
        first: (p.0 + 1, p.1 + 1),
        second: (q.0 + 1, q.1 + 1),
        norm: frob(ab, ba),
        product: to_pairs(ab),
        reverse_product: to_pairs(ba),
    };
    for &(i, j) in &labels {
        let m = &b[i][j];
        let d = dagger2(m);
        let (ab, ba) = (mul2(m, &d), mul2(&d, m));
        if frob(&ab, &ba) > tol {
            return Ok(ZeroDiscordCheck {
                zero_discord: false,
                witness: Some(witness(BlockCondition::Normality, (i, j), (i, j), &ab, &ba)),
            });
        }
    }
    for p in 0..4 {
        for q in p + 1..4 {
            let (x, y) = (labels[p], labels[q]);
            let ab = mul2(&b[x.0][x.1], &b[y.0][y.1]);
            let ba = mul2(&b[y.0][y.1], &b[x.0][x.1]);
            if frob(&ab, &ba) > tol {
                return Ok(ZeroDiscordCheck {
                    zero_discord: false,
                    witness: Some(witness(BlockCondition::Commutation, x, y, &ab, &ba)),
                });
            }
        }
    }
    Ok(ZeroDiscordCheck { zero_discord: true, witness: None })
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_phi_plus() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DensityMatrix::from_pure(2, &[C64::new(s, 0.0), zero(), zero(), C64::new(s, 0.0)])
        .expect("valid pure state")
}

/// `p |Ψ⁻⟩⟨Ψ⁻| + (1 - p) I/4`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(-1.0 / 3.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("Werner weight {p} outside [-1/3, 1]")));
    }
    let mut m = Mat::<C64>::zeros(4, 4);
    for i in 0..4 {
        m[(i, i)] = C64::new((1.0 - p) / 4.0, 0.0);
    }
    m[(1, 1)] += p / 2.0;
    m[(2, 2)] += p / 2.0;
    m[(1, 2)] -= p / 2.0;
    m[(2, 1)] -= p / 2.0;
    DensityMatrix::new(2, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn diag(p: [f64; 4]) -> DensityMatrix {
        DensityMatrix::new(2, Mat::from_fn(4, 4, |i, j| if i == j { c(p[i]) } else { zero() })).unwrap()
    }

    #[test]
    fn concurrence_examples() {
        assert!((concurrence(&bell_phi_plus()).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(concurrence(&DensityMatrix::maximally_mixed(2)).unwrap(), 0.0);
        assert!((concurrence(&werner(0.9).unwrap()).unwrap() - 0.85).abs() < 1e-12);
        let prod = DensityMatrix::from_pure(2, &[zero(), c(1.0), zero(), zero()]).unwrap();
        assert_eq!(concurrence(&prod).unwrap(), 0.0);
    }

    #[test]
    fn entropy_examples() {
        assert!(von_neumann_entropy(&bell_phi_plus()).unwrap().abs() < 1e-12);
        let half = DensityMatrix::maximally_mixed(1);
        assert!((von_neumann_entropy(&half).unwrap() - 2f64.ln()).abs() < 1e-14);
        let d = DensityMatrix::new(1, Mat::from_fn(2, 2, |i, j| if i == j { c([0.75, 0.25][i]) } else { zero() }))
            .unwrap();
        let want = -0.75 * 0.75f64.ln() - 0.25 * 0.25f64.ln();
        assert!((von_neumann_entropy(&d).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn mutual_information_examples() {
        let prod = diag([1.0, 0.0, 0.0, 0.0]);
        assert!(mutual_information(&prod).unwrap().abs() < 1e-12);
        assert!((mutual_information(&bell_phi_plus()).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-12);
        let cc = diag([0.5, 0.0, 0.0, 0.5]);
        assert!((mutual_information(&cc).unwrap() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn correlation_tensor_round_trip() {
        let w = werner(0.4).unwrap();
        let t = correlation_tensor(&w).unwrap();
        assert!((t[0][0] - 1.0).abs() < 1e-14);
        assert!((t[3][3] + 0.4).abs() < 1e-14);
        let back = from_correlation_tensor(&t).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((back.get(i, j) - w.get(i, j)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn zero_discord_examples() {
        assert!(zero_discord_test(&diag([0.1, 0.2, 0.3, 0.4]), 1e-10).unwrap().zero_discord);
        let prod = DensityMatrix::from_pure(2, &[c(0.6), c(0.8), zero(), zero()]).unwrap();
        assert!(zero_discord_test(&prod, 1e-10).unwrap().zero_discord);
        let check = zero_discord_test(&bell_phi_plus(), 1e-10).unwrap();
        assert!(!check.zero_discord);
        let w = check.witness.unwrap();
        // ρ^{12} = |0⟩⟨1|/2 is not normal
        assert_eq!(w.condition, BlockCondition::Normality);
        assert_eq!((w.first, w.second), ((1, 2), (1, 2)));
    }

    #[test]
    fn discord_examples() {
        let opts = DiscordOptions::default();
        let prod = DensityMatrix::from_pure(2, &[c(0.6), c(0.8), zero(), zero()]).unwrap();
        assert!(discord(&prod, &opts).unwrap().discord.abs() < 1e-6);
        let r = discord(&bell_phi_plus(), &opts).unwrap();
        assert!((r.discord - 2f64.ln()).abs() < 1e-4);
        assert!(!r.zero_discord);
        let cc = diag([0.5, 0.0, 0.0, 0.5]);
        let r = discord(&cc, &opts).unwrap();
        assert!(r.discord.abs() < 1e-8);
        assert!(r.zero_discord);
        assert!(discord(&cc, &DiscordOptions { grid: 8, ..opts }).is_err());
    }

    #[test]
    fn swap_is_involution() {
        let prod = DensityMatrix::from_pure(2, &[c(0.6), c(0.8), zero(), zero()]).unwrap();
        let s = swap_qubits(&prod).unwrap();
        assert!((s.get(2, 2).re - 0.64).abs() < 1e-14);
        let back = swap_qubits(&s).unwrap();
        assert!((back.get(1, 1).re - 0.64).abs() < 1e-14);
    }

    #[test]
    fn werner_rejects_bad_weight() {
        assert!(werner(1.5).is_err());
    }
}
