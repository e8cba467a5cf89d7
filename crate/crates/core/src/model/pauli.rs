use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Single-site Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliLabel {
    I,
    X,
    Y,
    Z,
}

impl PauliLabel {
    pub const ALL: [PauliLabel; 4] = [PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z];
    pub const XYZ: [PauliLabel; 3] = [PauliLabel::X, PauliLabel::Y, PauliLabel::Z];

    /// Index in the (0, x, y, z) ordering.
    pub fn index(self) -> usize {
        match self {
            PauliLabel::I => 0,
            PauliLabel::X => 1,
            PauliLabel::Y => 2,
            PauliLabel::Z => 3,
        }
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    /// `self * other = phase * label`.
    pub fn mul(self, other: PauliLabel) -> (C64, PauliLabel) {
        use PauliLabel::*;
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        match (self, other) {
            (I, p) | (p, I) => (one, p),
            (X, X) | (Y, Y) | (Z, Z) => (one, I),
            (X, Y) => (i, Z),
            (Y, X) => (-i, Z),
            (Y, Z) => (i, X),
            (Z, Y) => (-i, X),
            (Z, X) => (i, Y),
            (X, Z) => (-i, Y),
        }
    }

    /// Action on a computational basis bit: returns (phase, flipped?).
    ///
    /// Bit 0 is the σ^z = +1 state.
    #[inline]
    pub(crate) fn act(self, bit: bool) -> (C64, bool) {
        match self {
            PauliLabel::I => (C64::new(1.0, 0.0), false),
            PauliLabel::X => (C64::new(1.0, 0.0), true),
            PauliLabel::Y => {
                if bit {
                    (C64::new(0.0, -1.0), true)
                } else {
                    (C64::new(0.0, 1.0), true)
                }
            }
            PauliLabel::Z => {
                if bit {
                    (C64::new(-1.0, 0.0), false)
                } else {
                    (C64::new(1.0, 0.0), false)
                }
            }
        }
    }

    /// 2x2 matrix, row-major.
    pub fn matrix(self) -> [[C64; 2]; 2] {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            PauliLabel::I => [[o, z], [z, o]],
            PauliLabel::X => [[z, o], [o, z]],
            PauliLabel::Y => [[z, -i], [i, z]],
            PauliLabel::Z => [[o, z], [z, -o]],
        }
    }

    pub fn symbol(self) -> char {
        match self {
            PauliLabel::I => 'I',
            PauliLabel::X => 'X',
            PauliLabel::Y => 'Y',
            PauliLabel::Z => 'Z',
        }
    }
}

/// Tensor product of non-identity Pauli factors on strictly increasing sites.
///
/// The empty string is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PauliString(Vec<(usize, PauliLabel)>);

impl PauliString {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    /// Builds a string from factors in any order. Repeated sites are rejected,
    /// identity factors are dropped.
    pub fn new(mut factors: Vec<(usize, PauliLabel)>) -> Result<Self> {
        factors.retain(|&(_, p)| p != PauliLabel::I);
        factors.sort_by_key(|&(s, _)| s);
        if let Some(w) = factors.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidTerm(format!("site {} appears twice", w[0].0)));
        }
        Ok(Self(factors))
    }

    pub fn single(site: usize, label: PauliLabel) -> Self {
        if label == PauliLabel::I {
            Self::identity()
        } else {
            Self(vec![(site, label)])
        }
    }

    pub fn pair(a: usize, pa: PauliLabel, b: usize, pb: PauliLabel) -> Result<Self> {
        Self::new(vec![(a, pa), (b, pb)])
    }

    pub fn factors(&self) -> &[(usize, PauliLabel)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sites(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&(s, _)| s)
    }

    pub fn max_site(&self) -> Option<usize> {
        self.0.last().map(|&(s, _)| s)
    }

    pub fn label_at(&self, site: usize) -> PauliLabel {
        match self.0.binary_search_by_key(&site, |&(s, _)| s) {
            Ok(k) => self.0[k].1,
            Err(_) => PauliLabel::I,
        }
    }

    pub fn contains_site(&self, site: usize) -> bool {
        self.label_at(site) != PauliLabel::I
    }

    pub fn overlaps(&self, other: &PauliString) -> bool {
        self.sites().any(|s| other.contains_site(s))
    }

    /// `self * other = phase * string`.
    pub fn product(&self, other: &PauliString) -> (C64, PauliString) {
        let mut phase = C64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let si = self.0.get(i).map(|f| f.0).unwrap_or(usize::MAX);
            let sj = other.0.get(j).map(|f| f.0).unwrap_or(usize::MAX);
            if si < sj {
                out.push(self.0[i]);
                i += 1;
            } else if sj < si {
                out.push(other.0[j]);
                j += 1;
            } else {
                let (p, l) = self.0[i].1.mul(other.0[j].1);
                phase *= p;
                if l != PauliLabel::I {
                    out.push((si, l));
                }
                i += 1;
                j += 1;
            }
        }
        (phase, PauliString(out))
    }

    /// Two Pauli strings commute iff they differ (both non-identity) on an even
    /// number of sites.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let clashes = self
            .0
            .iter()
            .filter(|&&(s, p)| {
                let q = other.label_at(s);
                q != PauliLabel::I && q != p
            })
            .count();
        clashes % 2 == 0
    }

    /// Number of Y factors; odd counts give purely imaginary matrices.
    pub fn y_count(&self) -> usize {
        self.0.iter().filter(|f| f.1 == PauliLabel::Y).count()
    }

    /// Applies the string to computational basis state `index` of an
    /// `n_sites` chain whose site 0 is the most significant bit.
    #[inline]
    pub fn apply(&self, index: usize, n_sites: usize) -> (C64, usize) {
        let mut phase = C64::new(1.0, 0.0);
        let mut out = index;
        for &(s, p) in &self.0 {
            let shift = n_sites - 1 - s;
            let bit = (index >> shift) & 1 == 1;
            let (ph, flip) = p.act(bit);
            phase *= ph;
            if flip {
                out ^= 1 << shift;
            }
        }
        (phase, out)
    }

    /// Renames sites through `map` (old site -> new site).
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Result<PauliString> {
        PauliString::new(self.0.iter().map(|&(s, p)| (map(s), p)).collect())
    }
}

/// Paper-style labels: sites printed 1-based, e.g. `X1 Z4`.
impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        for (k, &(s, p)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", p.symbol(), s + 1)?;
        }
        Ok(())
    }
}
