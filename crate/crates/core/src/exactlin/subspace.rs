use super::field::Fp;
use super::matrix::Matrix;

/// A subspace of F_p^n kept as a reduced echelon basis, for fast membership
/// tests.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    /// reduced rows; `basis[r][pivots[r]] == 1` and every other row vanishes
    /// at that column
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Fp, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let m = Matrix::from_columns(field, ambient, vectors).transpose();
        let ech = m.rref();
        let basis = (0..ech.pivots.len())
            .map(|r| ech.matrix.row(r).to_vec())
            .collect();
        Self {
            field,
            ambient,
            basis,
            pivots: ech.pivots,
        }
    }

    pub fn column_space(m: &Matrix) -> Self {
        Self::span(m.field(), m.rows(), &m.columns())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Residue of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let a = w[c];
            if a != 0 {
                let na = f.neg(a);
                for (x, &b) in w.iter_mut().zip(row) {
                    if b != 0 {
                        *x = f.mul_add(*x, na, b);
                    }
                }
            }
        }
        w
    }

    /// Adds `v` to the span; returns `false` when it was already contained.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[c]).expect("nonzero");
        w.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for row in &mut self.basis {
            let a = row[c];
            if a != 0 {
                let na = f.neg(a);
                for (x, &b) in row.iter_mut().zip(&w) {
                    *x = f.mul_add(*x, na, b);
                }
            }
        }
        self.basis.push(w);
        self.pivots.push(c);
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}
