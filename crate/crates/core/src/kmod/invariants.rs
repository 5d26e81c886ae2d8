use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::Fp;

/// Isomorphism class of a k[T]/T^p-module: the multiset of its Jordan block
/// sizes, each in `[1, p]`, kept sorted in descending order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Invariants {
    field: Fp,
    parts: Vec<usize>,
}

impl Invariants {
    pub fn new(field: Fp, mut parts: Vec<usize>) -> Result<Self> {
        let p = field.p();
        if let Some(&bad) = parts.iter().find(|&&x| x == 0 || x > p as usize) {
            return Err(Error::InvariantOutOfRange { part: bad, p });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { field, parts })
    }

    /// The indecomposable `M_x = k[T]/T^x`.
    pub fn cyclic(field: Fp, x: usize) -> Result<Self> {
        Self::new(field, vec![x])
    }

    pub fn zero(field: Fp) -> Self {
        Self {
            field,
            parts: Vec::new(),
        }
    }

    /// `copies_p` copies of `M_p` and `copies_1` copies of `M_1`.
    pub fn permutation(field: Fp, copies_p: usize, copies_1: usize) -> Self {
        let mut parts = vec![field.p_usize(); copies_p];
        parts.extend(std::iter::repeat_n(1, copies_1));
        Self { field, parts }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of indecomposable summands.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn multiplicity(&self, x: usize) -> usize {
        self.parts.iter().filter(|&&y| y == x).count()
    }

    /// All parts in `{1, p}`.
    pub fn is_permutation(&self) -> bool {
        let p = self.field.p_usize();
        self.parts.iter().all(|&x| x == 1 || x == p)
    }

    /// Multiset union, the invariants of a direct sum.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.p(), other.p()));
        }
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::new(self.field, parts)
    }

    /// Every invariant multiset of total dimension exactly `dim`.
    pub fn all_of_dim(field: Fp, dim: usize) -> Vec<Self> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for x in (1..=max.min(rem)).rev() {
                cur.push(x);
                rec(rem - x, x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(dim, field.p_usize(), &mut Vec::new(), &mut out);
        out.into_iter().map(|parts| Self { field, parts }).collect()
    }
}

impl fmt::Debug for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@p={}", self.parts, self.p())
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|x| format!("M{x}")).collect();
        write!(f, "{}", s.join(" + "))
    }
}

/// Wire form: the bare part list.
#[derive(Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartsJson(pub Vec<usize>);

impl From<&Invariants> for PartsJson {
    fn from(inv: &Invariants) -> Self {
        PartsJson(inv.parts.clone())
    }
}
