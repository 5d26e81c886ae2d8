use serde::{Deserialize, Serialize};

use super::complex::Sequence;
use super::cover::{cover_step, CoverStep, TraceRecord};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::kmod::{EquivariantMap, ModuleRep};
use crate::pdist::group_ppdim;

/// An exact complex `0 → P_s → .. → P_0 → M → 0`.
///
/// `terms[i]` is `P_i` and `differentials[i - 1]` is `d_i: P_i → P_{i-1}`.
#[derive(Clone, Debug)]
pub struct PermResolution {
    pub module: ModuleRep,
    pub terms: Vec<ModuleRep>,
    pub differentials: Vec<EquivariantMap>,
    pub augmentation: EquivariantMap,
    pub trace: Vec<TraceRecord>,
}

impl PermResolution {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn as_sequence(&self) -> Sequence {
        let mut dims: Vec<usize> = self.terms.iter().rev().map(ModuleRep::dim).collect();
        dims.push(self.module.dim());
        let mut maps: Vec<Matrix> = self
            .differentials
            .iter()
            .rev()
            .map(|d| d.matrix().clone())
            .collect();
        maps.push(self.augmentation.matrix().clone());
        Sequence::new(dims, maps).expect("shapes agree by construction")
    }

    pub fn check_exact(&self) -> bool {
        self.as_sequence().is_exact()
    }

    pub fn all_terms_permutation(&self) -> bool {
        self.terms.iter().all(ModuleRep::is_permutation)
    }

    pub fn to_json(&self, check: Option<bool>) -> ResolutionJson {
        ResolutionJson {
            p: self.module.p(),
            length: self.length(),
            terms: self
                .terms
                .iter()
                .map(|t| t.decompose().parts().to_vec())
                .collect(),
            differentials: self
                .differentials
                .iter()
                .map(|d| d.matrix().to_rows())
                .collect(),
            augmentation: self.augmentation.matrix().to_rows(),
            trace: self.trace.clone(),
            check,
        }
    }
}

/// Wire form of a resolution; matrices are row-major lists of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionJson {
    pub p: u32,
    pub length: usize,
    pub terms: Vec<Vec<usize>>,
    pub differentials: Vec<Vec<Vec<u32>>>,
    pub augmentation: Vec<Vec<u32>>,
    pub trace: Vec<TraceRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check: Option<bool>,
}

/// Iterates [`cover_step`] on successive kernels until a kernel is zero or a
/// permutation module, then splices the short exact sequences.
pub fn build_resolution(m: &ModuleRep) -> Result<PermResolution> {
    let bound = group_ppdim(m.field());
    let mut steps: Vec<CoverStep> = vec![cover_step(m)?];
    loop {
        let kernel = &steps.last().expect("nonempty").kernel;
        if kernel.dim() == 0 || kernel.is_permutation() {
            break;
        }
        let next = cover_step(kernel)?;
        steps.push(next);
        assert!(steps.len() <= bound, "resolution longer than {bound}");
    }

    let mut terms: Vec<ModuleRep> = steps.iter().map(|s| s.cover.clone()).collect();
    let mut differentials = Vec::new();
    for w in steps.windows(2) {
        differentials.push(w[0].g.after(&w[1].f)?);
    }
    let last = steps.last().expect("nonempty");
    if last.kernel.dim() > 0 {
        terms.push(last.kernel.clone());
        differentials.push(last.g.clone());
    }
    Ok(PermResolution {
        module: m.clone(),
        terms,
        differentials,
        augmentation: steps[0].f.clone(),
        trace: steps.iter().flat_map(|s| s.trace.iter().copied()).collect(),
    })
}

fn block_diag_map(a: &EquivariantMap, b: &EquivariantMap) -> Result<EquivariantMap> {
    EquivariantMap::new(
        a.source().direct_sum(b.source())?,
        a.target().direct_sum(b.target())?,
        a.matrix().block_diag(b.matrix())?,
    )
}

/// Degreewise direct sum, resolving `M ⊕ M'`; the shorter resolution is
/// padded with zero terms.
pub fn direct_sum_resolutions(a: &PermResolution, b: &PermResolution) -> Result<PermResolution> {
    let field = a.module.field();
    let len = a.length().max(b.length());
    let term = |r: &PermResolution, i: usize| {
        r.terms
            .get(i)
            .cloned()
            .unwrap_or_else(|| ModuleRep::zero(field))
    };
    let diff = |r: &PermResolution, i: usize| {
        r.differentials
            .get(i - 1)
            .cloned()
            .unwrap_or_else(|| EquivariantMap::zero(&term(r, i), &term(r, i - 1)))
    };
    let terms = (0..=len)
        .map(|i| term(a, i).direct_sum(&term(b, i)))
        .collect::<Result<Vec<_>>>()?;
    let differentials = (1..=len)
        .map(|i| block_diag_map(&diff(a, i), &diff(b, i)))
        .collect::<Result<Vec<_>>>()?;
    let augmentation = block_diag_map(&a.augmentation, &b.augmentation)?;
    Ok(PermResolution {
        module: a.module.direct_sum(&b.module)?,
        terms,
        differentials,
        augmentation,
        trace: a.trace.iter().chain(&b.trace).copied().collect(),
    })
}

/// Total complex of the tensor product of two resolutions, resolving
/// `M ⊗ M'` in length at most the sum of the two lengths.
///
/// Degree `n` is `⊕_{i+j=n} P_i ⊗ Q_j` (summands ordered by `i`) and
/// `d(x ⊗ y) = dx ⊗ y + (-1)^i x ⊗ dy`.
pub fn tensor_resolutions(a: &PermResolution, b: &PermResolution) -> Result<PermResolution> {
    let field = a.module.field();
    if field != b.module.field() {
        return Err(Error::FieldMismatch(a.module.p(), b.module.p()));
    }
    let (s, t) = (a.length(), b.length());
    let len = s + t;
    let pairs = |n: usize| -> Vec<(usize, usize)> {
        (n.saturating_sub(t)..=n.min(s))
            .map(|i| (i, n - i))
            .collect()
    };
    let product = |i: usize, j: usize| a.terms[i].tensor(&b.terms[j]);

    let mut terms = Vec::with_capacity(len + 1);
    for n in 0..=len {
        let mut acc = ModuleRep::zero(field);
        for (i, j) in pairs(n) {
            acc = acc.direct_sum(&product(i, j)?)?;
        }
        terms.push(acc);
    }

    let mut differentials = Vec::with_capacity(len);
    for n in 1..=len {
        let src_pairs = pairs(n);
        let dst_pairs = pairs(n - 1);
        let offsets = |ps: &[(usize, usize)]| -> Vec<usize> {
            let mut off = 0;
            ps.iter()
                .map(|&(i, j)| {
                    let o = off;
                    off += a.terms[i].dim() * b.terms[j].dim();
                    o
                })
                .collect()
        };
        let (src_off, dst_off) = (offsets(&src_pairs), offsets(&dst_pairs));
        let mut m = Matrix::zeros(field, terms[n - 1].dim(), terms[n].dim());
        for (si, &(i, j)) in src_pairs.iter().enumerate() {
            if i > 0 {
                let di = dst_pairs
                    .iter()
                    .position(|&q| q == (i - 1, j))
                    .expect("present");
                let block = a.differentials[i - 1]
                    .matrix()
                    .kron(&Matrix::identity(field, b.terms[j].dim()))?;
                m.paste(dst_off[di], src_off[si], &block);
            }
            if j > 0 {
                let di = dst_pairs
                    .iter()
                    .position(|&q| q == (i, j - 1))
                    .expect("present");
                let mut block = Matrix::identity(field, a.terms[i].dim())
                    .kron(b.differentials[j - 1].matrix())?;
                if i % 2 == 1 {
                    block = block.scale(field.neg(1));
                }
                m.paste(dst_off[di], src_off[si], &block);
            }
        }
        differentials.push(EquivariantMap::new(
            terms[n].clone(),
            terms[n - 1].clone(),
            m,
        )?);
    }

    let module = a.module.tensor(&b.module)?;
    let augmentation = EquivariantMap::new(
        terms[0].clone(),
        module.clone(),
        a.augmentation.matrix().kron(b.augmentation.matrix())?,
    )?;
    Ok(PermResolution {
        module,
        terms,
        differentials,
        augmentation,
        trace: Vec::new(),
    })
}
