use serde::{Deserialize, Serialize};

use super::complex::Sequence;
use crate::error::Result;
use crate::exactlin::Matrix;
use crate::kmod::{EquivariantMap, Invariants, ModuleRep};
use crate::pdist::predecessor;

/// One step `x = p + ε - x'` of the cover construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[usize; 3]", from = "[usize; 3]")]
pub struct TraceRecord {
    pub x: usize,
    pub eps: usize,
    pub x_prime: usize,
}

impl From<TraceRecord> for [usize; 3] {
    fn from(r: TraceRecord) -> Self {
        [r.x, r.eps, r.x_prime]
    }
}

impl From<[usize; 3]> for TraceRecord {
    fn from(a: [usize; 3]) -> Self {
        Self {
            x: a[0],
            eps: a[1],
            x_prime: a[2],
        }
    }
}

/// A short exact sequence `0 → K → P → M → 0` with `P` a permutation module.
#[derive(Clone, Debug)]
pub struct CoverStep {
    pub module: ModuleRep,
    pub cover: ModuleRep,
    pub f: EquivariantMap,
    pub kernel: ModuleRep,
    pub g: EquivariantMap,
    /// one record per invariant of `M` outside `{1, p}`, in block order
    pub trace: Vec<TraceRecord>,
}

impl CoverStep {
    pub fn as_sequence(&self) -> Sequence {
        Sequence::new(
            vec![self.kernel.dim(), self.cover.dim(), self.module.dim()],
            vec![self.g.matrix().clone(), self.f.matrix().clone()],
        )
        .expect("shapes agree by construction")
    }

    pub fn check_exact(&self) -> bool {
        self.as_sequence().is_exact()
    }
}

/// Where one invariant of `M` is covered inside `P`.
struct Piece {
    /// offset of the block in (canonical) `M`
    offset: usize,
    x: usize,
    /// block index among the `M_p` summands of `P`
    free: Option<usize>,
    /// block index among the `M_1` summands of `P`
    trivial: Option<usize>,
    x_prime: usize,
}

/// Builds the cover `P ↠ M` block by block:
///
/// * `x ∈ {1, p}`: `P(i) = M_x` mapping generator to generator;
/// * otherwise `x = p + ε - x'`: `P(i) = M_p` (plus `M_1` when `ε = 1`), the
///   `M_p` generator going to `m_i` and the `M_1` generator to `T^{x-1} m_i`.
///
/// The generators `m_i` are the chain starts of a Jordan basis of `M`
/// (the standard basis vectors when `M` is already canonical). The kernel is
/// returned in canonical form with `g` composed with the change of basis.
pub fn cover_step(m: &ModuleRep) -> Result<CoverStep> {
    let field = m.field();
    let p = field.p_usize();
    let (inv, basis) = m.jordan_basis();

    let mut pieces = Vec::with_capacity(inv.len());
    let mut trace = Vec::new();
    let (mut n_free, mut n_trivial) = (0, 0);
    let mut offset = 0;
    for &x in inv.parts() {
        let mut piece = Piece {
            offset,
            x,
            free: None,
            trivial: None,
            x_prime: 0,
        };
        if x == 1 {
            piece.trivial = Some(n_trivial);
            n_trivial += 1;
        } else if x == p {
            piece.free = Some(n_free);
            n_free += 1;
        } else {
            let (x_prime, eps) = predecessor(field, x)?;
            piece.x_prime = x_prime;
            piece.free = Some(n_free);
            n_free += 1;
            if eps == 1 {
                piece.trivial = Some(n_trivial);
                n_trivial += 1;
            }
            trace.push(TraceRecord { x, eps, x_prime });
        }
        pieces.push(piece);
        offset += x;
    }

    let cover = ModuleRep::from_invariants(&Invariants::permutation(field, n_free, n_trivial));
    let free_col = |j: usize| j * p;
    let trivial_col = |j: usize| n_free * p + j;

    // f in the canonical coordinates of M
    let mut f_canon = Matrix::zeros(field, m.dim(), cover.dim());
    for pc in &pieces {
        if let Some(j) = pc.free {
            for t in 0..pc.x {
                f_canon.set(pc.offset + t, free_col(j) + t, 1);
            }
        }
        if let Some(j) = pc.trivial {
            f_canon.set(pc.offset + pc.x - 1, trivial_col(j), 1);
        }
    }

    // kernel, one piece at a time; each piece's columns form a submodule of P
    let mut chains: Vec<(usize, Vec<Vec<u32>>)> = Vec::new();
    for pc in &pieces {
        let mut cols: Vec<usize> = Vec::new();
        let mut local_parts = Vec::new();
        if let Some(j) = pc.free {
            cols.extend(free_col(j)..free_col(j) + p);
            local_parts.push(p);
        }
        if let Some(j) = pc.trivial {
            cols.push(trivial_col(j));
            local_parts.push(1);
        }
        let local_module = ModuleRep::from_invariants(&Invariants::new(field, local_parts)?);
        let mut local_f = Matrix::zeros(field, pc.x, cols.len());
        for (lc, &c) in cols.iter().enumerate() {
            for r in 0..pc.x {
                local_f.set(r, lc, f_canon.get(pc.offset + r, c));
            }
        }
        let kernel_vectors = local_f.kernel_basis();
        if kernel_vectors.is_empty() {
            assert!(
                pc.x == 1 || pc.x == p,
                "only permutation blocks are covered isomorphically"
            );
            continue;
        }
        let kernel_basis = Matrix::from_columns(field, cols.len(), &kernel_vectors);
        let local_kernel = local_module.restrict(&kernel_basis)?;
        let (kinv, jordan) = local_kernel.jordan_basis();
        assert_eq!(
            kinv.parts(),
            &[pc.x_prime],
            "kernel of the cover of M_{} is M_{}",
            pc.x,
            pc.x_prime
        );
        let in_local = kernel_basis.mul(&jordan)?;
        let column = |c: usize| {
            let mut v = vec![0u32; cover.dim()];
            for (lr, &r) in cols.iter().enumerate() {
                v[r] = in_local.get(lr, c);
            }
            v
        };
        chains.push((pc.x_prime, (0..pc.x_prime).map(column).collect()));
    }
    chains.sort_by_key(|c| std::cmp::Reverse(c.0));
    let kernel_inv = Invariants::new(field, chains.iter().map(|c| c.0).collect())?;
    let kernel = ModuleRep::from_invariants(&kernel_inv);
    let g_cols: Vec<Vec<u32>> = chains.into_iter().flat_map(|(_, cols)| cols).collect();
    let g_matrix = Matrix::from_columns(field, cover.dim(), &g_cols);

    let f = EquivariantMap::new(cover.clone(), m.clone(), basis.mul(&f_canon)?)?;
    let g = EquivariantMap::new(kernel.clone(), cover.clone(), g_matrix)?;
    Ok(CoverStep {
        module: m.clone(),
        cover,
        f,
        kernel,
        g,
        trace,
    })
}
