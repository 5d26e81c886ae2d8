//! Depth, nilpotency index and the direct-summand criteria for single
//! elements.

use std::fmt;

use super::hom::EquivariantMap;
use super::module::ModuleRep;
use super::poly::TruncatedPoly;
use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vec, Matrix};

/// Largest `i` with `m ∈ T^i M`; the zero element has infinite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

pub fn depth(m: &ModuleRep, v: &[u32]) -> Result<Depth> {
    m.check_element(v)?;
    if is_zero_vec(v) {
        return Ok(Depth::Infinite);
    }
    // im T^i is empty past the stored chain, so a nonzero v stops inside it
    let found = m
        .images()
        .iter()
        .rposition(|img| img.contains(v))
        .expect("T^0 M is everything");
    Ok(Depth::Finite(found))
}

/// Smallest `i` with `T^i m = 0`.
pub fn nilpotency_index(m: &ModuleRep, v: &[u32]) -> Result<usize> {
    m.check_element(v)?;
    let mut w = v.to_vec();
    let mut i = 0;
    while !is_zero_vec(&w) {
        w = m.apply(&w)?;
        i += 1;
    }
    Ok(i)
}

/// `v` generates a direct summand iff `dep(T^{α-1} v) = α - 1` where `α` is
/// its nilpotency index.
pub fn generates_summand(m: &ModuleRep, v: &[u32]) -> Result<bool> {
    let alpha = nilpotency_index(m, v)?;
    if alpha == 0 {
        return Err(Error::ZeroElement);
    }
    let socle = m.apply_power(v, alpha - 1)?;
    Ok(depth(m, &socle)? == Depth::Finite(alpha - 1))
}

/// Summand test valid on permutation modules: `dep(Tv) = 1`, or `dep(v) = 0`
/// with `Tv = 0`.
pub fn generates_summand_perm(m: &ModuleRep, v: &[u32]) -> Result<bool> {
    let inv = m.decompose();
    if !inv.is_permutation() {
        return Err(Error::NotPermutation(inv.parts().to_vec()));
    }
    m.check_element(v)?;
    if is_zero_vec(v) {
        return Err(Error::ZeroElement);
    }
    let tv = m.apply(v)?;
    if depth(m, &tv)? == Depth::Finite(1) {
        return Ok(true);
    }
    Ok(depth(m, v)? == Depth::Finite(0) && is_zero_vec(&tv))
}

/// An equivariant idempotent `π: M → M` with image `⟨v⟩` and `π(v) = v`,
/// when `v` generates a direct summand.
///
/// Constructed by writing `v = Σ f_i m_i` over a cyclic decomposition,
/// choosing a block of size `α` whose coefficient polynomial is a unit, and
/// sending its generator to `g v` with `g = f^{-1}` in `k[T]/T^α`. Returns
/// `None` when no such block exists.
pub fn split_projection(m: &ModuleRep, v: &[u32]) -> Result<Option<EquivariantMap>> {
    let alpha = nilpotency_index(m, v)?;
    if alpha == 0 {
        return Err(Error::ZeroElement);
    }
    let f = m.field();
    let (inv, basis) = m.jordan_basis();
    let to_canon = basis.inverse().expect("Jordan basis is invertible");
    let coords = to_canon.mul_vec(v)?;

    let mut off = 0;
    let mut chosen = None;
    for &x in inv.parts() {
        if x == alpha && coords[off] != 0 {
            chosen = Some(off);
            break;
        }
        off += x;
    }
    let Some(off) = chosen else {
        return Ok(None);
    };

    let unit = TruncatedPoly::new(f, &coords[off..off + alpha], alpha)?;
    let g = unit.invert()?;
    let mut gv = vec![0u32; m.dim()];
    let mut tv = v.to_vec();
    for &c in g.coeffs() {
        for (acc, &t) in gv.iter_mut().zip(&tv) {
            *acc = f.mul_add(*acc, c, t);
        }
        tv = m.apply(&tv)?;
    }

    // columns of the chosen block go to T^j (g v); everything else to zero
    let mut in_canon = Matrix::zeros(f, m.dim(), m.dim());
    let mut col = gv;
    for j in 0..alpha {
        for (i, &c) in col.iter().enumerate() {
            in_canon.set(i, off + j, c);
        }
        col = m.apply(&col)?;
    }
    let pi = in_canon.mul(&to_canon)?;
    let proj = EquivariantMap::new(m.clone(), m.clone(), pi)?;

    assert_eq!(proj.apply(v)?, v, "projection fixes the generator");
    assert_eq!(
        proj.matrix().mul(proj.matrix())?,
        *proj.matrix(),
        "projection is idempotent"
    );
    Ok(Some(proj))
}
