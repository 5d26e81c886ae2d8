use super::module::ModuleRep;
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// A k-linear map `source → target` commuting with `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    source: ModuleRep,
    target: ModuleRep,
    matrix: Matrix,
}

impl EquivariantMap {
    pub fn new(source: ModuleRep, target: ModuleRep, matrix: Matrix) -> Result<Self> {
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch(source.p(), target.p()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map of dimension {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let left = matrix.mul(source.action())?;
        let right = target.action().mul(&matrix)?;
        if left != right {
            return Err(Error::NotEquivariant);
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub(crate) fn new_unchecked(source: ModuleRep, target: ModuleRep, matrix: Matrix) -> Self {
        debug_assert_eq!(
            matrix.mul(source.action()).unwrap(),
            target.action().mul(&matrix).unwrap()
        );
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(m: &ModuleRep) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &ModuleRep, target: &ModuleRep) -> Self {
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            Matrix::zeros(source.field(), target.dim(), source.dim()),
        )
    }

    pub fn source(&self) -> &ModuleRep {
        &self.source
    }

    pub fn target(&self) -> &ModuleRep {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ first`
    pub fn after(&self, first: &EquivariantMap) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        Ok(Self::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix)?,
        ))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    /// Linear combination `Σ c_i φ_i` of maps sharing source and target.
    pub fn combination(maps: &[EquivariantMap], coeffs: &[u32]) -> Result<Self> {
        let first = maps
            .first()
            .ok_or_else(|| Error::Input("empty combination".into()))?;
        if coeffs.len() != maps.len() {
            return Err(Error::DimensionMismatch("coefficient count".into()));
        }
        let mut acc = Matrix::zeros(
            first.matrix.field(),
            first.matrix.rows(),
            first.matrix.cols(),
        );
        for (m, &c) in maps.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&m.matrix.scale(c))?;
            }
        }
        Ok(Self::new_unchecked(
            first.source.clone(),
            first.target.clone(),
            acc,
        ))
    }
}

/// Basis of `Hom(M_a, M_b)` for cyclic modules: the `j`-th map sends the
/// generator of `M_a` to `T^{max(0, b-a) + j}` times the generator of `M_b`,
/// `j = 0 .. min(a, b)`.
///
/// Non-canonical cyclic inputs are handled through their Jordan bases.
pub fn hom_basis(a: &ModuleRep, b: &ModuleRep) -> Result<Vec<EquivariantMap>> {
    for m in [a, b] {
        let inv = m.decompose();
        if inv.len() != 1 {
            return Err(Error::NotCyclic(inv.parts().to_vec()));
        }
    }
    hom_basis_blockwise(a, b)
}

/// Basis of `Hom(A, B)` assembled block by block from the cyclic formula,
/// expressed in the given bases of `A` and `B`.
pub fn hom_basis_blockwise(a: &ModuleRep, b: &ModuleRep) -> Result<Vec<EquivariantMap>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.p(), b.p()));
    }
    let f = a.field();
    let (inv_a, basis_a) = a.jordan_basis();
    let (inv_b, basis_b) = b.jordan_basis();
    let to_a = basis_a.inverse().expect("Jordan basis is invertible");
    let mut out = Vec::new();
    let mut off_a = 0;
    for &xa in inv_a.parts() {
        let mut off_b = 0;
        for &xb in inv_b.parts() {
            let shift = xb.saturating_sub(xa);
            for j in 0..xa.min(xb) {
                let mut canon = Matrix::zeros(f, b.dim(), a.dim());
                for t in 0..xa {
                    let target = t + shift + j;
                    if target < xb {
                        canon.set(off_b + target, off_a + t, 1);
                    }
                }
                let matrix = basis_b.mul(&canon)?.mul(&to_a)?;
                out.push(EquivariantMap::new_unchecked(a.clone(), b.clone(), matrix));
            }
            off_b += xb;
        }
        off_a += xa;
    }
    Ok(out)
}

/// Basis of `Hom(A, B)` as the null space of the linearised intertwining
/// constraint `X N_A - N_B X = 0`.
pub fn intertwiner_basis(a: &ModuleRep, b: &ModuleRep) -> Result<Vec<EquivariantMap>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.p(), b.p()));
    }
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let (na, nb) = (a.action(), b.action());
    let unknowns = da * db;
    // X is flattened row-major: X[i][k] ↦ i * da + k
    let mut constraint = Matrix::zeros(f, unknowns, unknowns);
    for i in 0..db {
        for j in 0..da {
            let row = i * da + j;
            for k in 0..da {
                let v = na.get(k, j);
                if v != 0 {
                    let col = i * da + k;
                    constraint.set(row, col, f.add(constraint.get(row, col), v));
                }
            }
            for k in 0..db {
                let v = nb.get(i, k);
                if v != 0 {
                    let col = k * da + j;
                    constraint.set(row, col, f.sub(constraint.get(row, col), v));
                }
            }
        }
    }
    constraint
        .kernel_basis()
        .into_iter()
        .map(|x| {
            let m = Matrix::from_data(f, db, da, x)?;
            Ok(EquivariantMap::new_unchecked(a.clone(), b.clone(), m))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Fp;
    use crate::kmod::Invariants;

    fn cyc(p: u64, x: usize) -> ModuleRep {
        ModuleRep::cyclic(Fp::new(p).unwrap(), x).unwrap()
    }

    fn span_rank(maps: &[EquivariantMap]) -> usize {
        let f = maps[0].matrix().field();
        let cols: Vec<Vec<u32>> = maps.iter().map(|m| m.matrix().to_rows().concat()).collect();
        Matrix::from_columns(f, cols[0].len(), &cols).rank()
    }

    #[test]
    fn hom_examples() {
        let b = hom_basis(&cyc(3, 1), &cyc(3, 3)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].apply(&[1]).unwrap(), vec![0, 0, 1]);

        let b = hom_basis(&cyc(3, 3), &cyc(3, 1)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].matrix().to_rows(), vec![vec![1, 0, 0]]);

        let b = hom_basis(&cyc(3, 2), &cyc(3, 2)).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].matrix(), &Matrix::identity(Fp::new(3).unwrap(), 2));
        assert_eq!(b[1].apply(&[1, 0]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn hom_matches_intertwiner_solve() {
        for p in [2u64, 3, 5] {
            for a in 1..=p as usize {
                for b in 1..=p as usize {
                    let (ma, mb) = (cyc(p, a), cyc(p, b));
                    let basis = hom_basis(&ma, &mb).unwrap();
                    let solved = intertwiner_basis(&ma, &mb).unwrap();
                    assert_eq!(basis.len(), a.min(b));
                    assert_eq!(solved.len(), basis.len());
                    let mut all = basis.clone();
                    all.extend(solved);
                    assert_eq!(span_rank(&all), basis.len());
                    assert_eq!(span_rank(&basis), basis.len());
                }
            }
        }
    }

    #[test]
    fn blockwise_matches_intertwiner_solve() {
        let f = Fp::new(3).unwrap();
        let a = ModuleRep::from_invariants(&Invariants::new(f, vec![3, 2, 1]).unwrap());
        let b = ModuleRep::from_invariants(&Invariants::new(f, vec![2, 2]).unwrap());
        let basis = hom_basis_blockwise(&a, &b).unwrap();
        let solved = intertwiner_basis(&a, &b).unwrap();
        assert_eq!(basis.len(), solved.len());
        let mut all = basis.clone();
        all.extend(solved);
        assert_eq!(span_rank(&all), basis.len());
    }

    #[test]
    fn non_cyclic_rejected() {
        let f = Fp::new(3).unwrap();
        let a = ModuleRep::from_invariants(&Invariants::new(f, vec![2, 1]).unwrap());
        assert!(matches!(
            hom_basis(&a, &cyc(3, 2)),
            Err(Error::NotCyclic(_))
        ));
    }

    #[test]
    fn non_equivariant_rejected() {
        let m = cyc(3, 2);
        let bad = Matrix::from_rows(Fp::new(3).unwrap(), &[[0, 1], [0, 0]]).unwrap();
        assert_eq!(
            EquivariantMap::new(m.clone(), m, bad).unwrap_err(),
            Error::NotEquivariant
        );
    }
}
