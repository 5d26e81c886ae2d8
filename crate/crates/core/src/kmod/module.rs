use std::sync::OnceLock;

use super::invariants::Invariants;
use crate::error::{Error, Result};
use crate::exactlin::{Fp, Matrix, Subspace};

/// A finite-dimensional module over `k C_p = k[T]/T^p`, given by the matrix
/// of `T = g - 1` acting on column vectors.
///
/// Jordan blocks use the generator-first orientation: inside a block of size
/// `x` with basis `e_1, .., e_x` we have `T e_j = e_{j+1}` and `T e_x = 0`, so
/// `T^i e_1` is literally the `(i+1)`-th basis vector.
#[derive(Clone)]
pub struct ModuleRep {
    field: Fp,
    action: Matrix,
    /// `im T^i` for `i = 0, 1, ..` up to the first zero image
    images: OnceLock<Vec<Subspace>>,
}

impl PartialEq for ModuleRep {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.action == other.action
    }
}

impl Eq for ModuleRep {}

impl std::fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleRep")
            .field("p", &self.field.p())
            .field("dim", &self.dim())
            .field("action", &self.action)
            .finish()
    }
}

impl ModuleRep {
    /// Validates that `action` is square and satisfies `N^p = 0`.
    pub fn new(action: Matrix) -> Result<Self> {
        if !action.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "action matrix is {}x{}",
                action.rows(),
                action.cols()
            )));
        }
        let field = action.field();
        if !action.pow(field.p() as u64)?.is_zero() {
            return Err(Error::NotNilpotent { p: field.p() });
        }
        Ok(Self::new_unchecked(action))
    }

    pub(crate) fn new_unchecked(action: Matrix) -> Self {
        Self {
            field: action.field(),
            action,
            images: OnceLock::new(),
        }
    }

    pub fn zero(field: Fp) -> Self {
        Self::new_unchecked(Matrix::zeros(field, 0, 0))
    }

    /// Block-diagonal model of an isomorphism class, blocks in canonical
    /// (descending) order.
    pub fn from_invariants(inv: &Invariants) -> Self {
        let field = inv.field();
        let n = inv.dim();
        let mut action = Matrix::zeros(field, n, n);
        let mut off = 0;
        for &x in inv.parts() {
            for j in 0..x.saturating_sub(1) {
                action.set(off + j + 1, off + j, 1);
            }
            off += x;
        }
        Self::new_unchecked(action)
    }

    /// `M_x`
    pub fn cyclic(field: Fp, x: usize) -> Result<Self> {
        Ok(Self::from_invariants(&Invariants::cyclic(field, x)?))
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    pub(crate) fn images(&self) -> &[Subspace] {
        self.images.get_or_init(|| {
            let f = self.field;
            let n = self.dim();
            let mut chain = vec![Subspace::span(f, n, &Matrix::identity(f, n).columns())];
            loop {
                let last = chain.last().expect("nonempty");
                if last.dim() == 0 {
                    break;
                }
                let next: Vec<Vec<u32>> = last
                    .basis()
                    .iter()
                    .map(|v| self.action.mul_vec(v).expect("square"))
                    .collect();
                chain.push(Subspace::span(f, n, &next));
            }
            chain
        })
    }

    /// `T^i M` as a subspace.
    pub fn radical_power(&self, i: usize) -> Subspace {
        let images = self.images();
        images
            .get(i)
            .cloned()
            .unwrap_or_else(|| Subspace::span(self.field, self.dim(), &[]))
    }

    /// `rank(N^i)`
    pub fn rank_of_power(&self, i: usize) -> usize {
        self.images().get(i).map_or(0, Subspace::dim)
    }

    /// Invariants from the rank profile: the number of blocks of size `i` is
    /// `rank N^{i-1} - 2 rank N^i + rank N^{i+1}`.
    pub fn decompose(&self) -> Invariants {
        let p = self.field.p_usize();
        let mut parts = Vec::new();
        for i in 1..=p {
            let count =
                self.rank_of_power(i - 1) + self.rank_of_power(i + 1) - 2 * self.rank_of_power(i);
            parts.extend(std::iter::repeat_n(i, count));
        }
        Invariants::new(self.field, parts).expect("block sizes lie in [1, p]")
    }

    /// Permutation modules of `C_p` are exactly sums of `M_1` and `M_p`.
    pub fn is_permutation(&self) -> bool {
        self.decompose().is_permutation()
    }

    /// Whether `self` is literally the block-diagonal model of its class.
    pub fn is_canonical(&self) -> bool {
        self.action == Self::from_invariants(&self.decompose()).action
    }

    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.action.mul_vec(v)
    }

    /// `T^i v`
    pub fn apply_power(&self, v: &[u32], i: usize) -> Result<Vec<u32>> {
        let mut w = v.to_vec();
        for _ in 0..i {
            w = self.apply(&w)?;
        }
        Ok(w)
    }

    pub fn check_element(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in a module of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.p(), other.p()));
        }
        Ok(Self::new_unchecked(self.action.block_diag(&other.action)?))
    }

    /// Tensor product over k with the diagonal group action:
    /// `T ↦ (I+N)⊗(I+N') - I⊗I = N⊗I + I⊗N' + N⊗N'`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.p(), other.p()));
        }
        let f = self.field;
        let i_a = Matrix::identity(f, self.dim());
        let i_b = Matrix::identity(f, other.dim());
        let action = self
            .action
            .kron(&i_b)?
            .add(&i_a.kron(&other.action)?)?
            .add(&self.action.kron(&other.action)?)?;
        Self::new(action)
    }

    /// Submodule spanned by the columns of `basis` (assumed independent and
    /// T-stable), with the induced action in that basis.
    pub fn restrict(&self, basis: &Matrix) -> Result<Self> {
        let image = self.action.mul(basis)?;
        let coords = solve_in_basis(basis, &image)?
            .ok_or_else(|| Error::Input("subspace is not T-stable".into()))?;
        Ok(Self::new_unchecked(coords))
    }

    /// A Jordan basis: columns `m, Tm, .., T^{x-1}m` for each block, blocks in
    /// descending order, so that `S^{-1} N S` is the canonical model.
    ///
    /// For a module already in canonical form the identity is returned.
    pub fn jordan_basis(&self) -> (Invariants, Matrix) {
        let inv = self.decompose();
        if self.is_canonical() {
            return (inv, Matrix::identity(self.field, self.dim()));
        }
        (inv, self.jordan_basis_general())
    }

    fn jordan_basis_general(&self) -> Matrix {
        let f = self.field;
        let n = self.dim();
        // kernels of T^s for s = 0..=top (T^top = 0)
        let mut power = Matrix::identity(f, n);
        let mut kernels = vec![Vec::new()];
        while !power.is_zero() {
            power = power.mul(&self.action).expect("square");
            kernels.push(power.kernel_basis());
        }
        let top = kernels.len() - 1;
        let mut chains: Vec<(usize, Vec<u32>)> = Vec::new();
        for s in (1..=top).rev() {
            let mut span = Subspace::span(f, n, &kernels[s - 1]);
            let upper = kernels.get(s + 1).unwrap_or(&kernels[top]);
            for v in upper {
                span.insert(&self.apply(v).expect("square"));
            }
            for v in &kernels[s] {
                if span.insert(v) {
                    chains.push((s, v.clone()));
                }
            }
        }
        let mut cols = Vec::with_capacity(n);
        for (s, start) in chains {
            let mut v = start;
            for _ in 0..s {
                let next = self.apply(&v).expect("square");
                cols.push(std::mem::replace(&mut v, next));
            }
        }
        Matrix::from_columns(f, n, &cols)
    }
}

/// Coordinates `X` with `basis * X = rhs`, when every column of `rhs` lies in
/// the column span of `basis` (whose columns must be independent).
fn solve_in_basis(basis: &Matrix, rhs: &Matrix) -> Result<Option<Matrix>> {
    let k = basis.cols();
    let ech = basis.hstack(rhs)?.rref();
    if ech.pivots.iter().any(|&c| c >= k) {
        return Ok(None);
    }
    if ech.pivots.len() != k {
        return Err(Error::Input("basis columns are dependent".into()));
    }
    Ok(Some(ech.matrix.submatrix(0..k, k..k + rhs.cols())))
}
