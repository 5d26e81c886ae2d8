//! Seeded generators for matrices, modules and equivariant maps.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{Fp, Matrix};
use crate::kmod::{hom_basis_blockwise, EquivariantMap, Invariants, ModuleRep};

/// Deterministic generator for trial `index` under a 64-bit run seed.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_matrix<R: Rng>(field: Fp, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| rng.gen_range(0..field.p()))
        .collect();
    Matrix::from_data(field, rows, cols, data).expect("shape")
}

pub fn random_invertible<R: Rng>(field: Fp, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random multiset of block sizes with total dimension exactly `dim`.
pub fn random_invariants<R: Rng>(field: Fp, dim: usize, rng: &mut R) -> Invariants {
    let p = field.p_usize();
    let mut rest = dim;
    let mut parts = Vec::new();
    while rest > 0 {
        let x = rng.gen_range(1..=rest.min(p));
        parts.push(x);
        rest -= x;
    }
    Invariants::new(field, parts).expect("parts in range")
}

/// The canonical model of `inv` conjugated by a random invertible matrix.
pub fn random_conjugate<R: Rng>(inv: &Invariants, rng: &mut R) -> ModuleRep {
    let canon = ModuleRep::from_invariants(inv);
    let s = random_invertible(inv.field(), inv.dim(), rng);
    let s_inv = s.inverse().expect("invertible");
    let action = s
        .mul(canon.action())
        .and_then(|m| m.mul(&s_inv))
        .expect("square");
    ModuleRep::new(action).expect("conjugate of a module is a module")
}

/// A random module of dimension in `1..=max_dim`, not in canonical form.
pub fn random_module<R: Rng>(field: Fp, max_dim: usize, rng: &mut R) -> ModuleRep {
    let dim = rng.gen_range(1..=max_dim);
    random_conjugate(&random_invariants(field, dim, rng), rng)
}

/// Uniformly random element of `Hom(a, b)`.
pub fn random_equivariant<R: Rng>(a: &ModuleRep, b: &ModuleRep, rng: &mut R) -> EquivariantMap {
    let basis = hom_basis_blockwise(a, b).expect("same field");
    if basis.is_empty() {
        return EquivariantMap::zero(a, b);
    }
    let p = a.field().p();
    let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
    EquivariantMap::combination(&basis, &coeffs).expect("same shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_module() {
        let f = Fp::new(5).unwrap();
        let a = random_module(f, 6, &mut trial_rng(7, 3));
        let b = random_module(f, 6, &mut trial_rng(7, 3));
        assert_eq!(a, b);
        let c = random_module(f, 6, &mut trial_rng(7, 4));
        assert!(a != c || a.dim() == 1);
    }

    #[test]
    fn random_maps_are_equivariant() {
        let f = Fp::new(3).unwrap();
        let mut rng = trial_rng(1, 0);
        for _ in 0..20 {
            let a = random_module(f, 5, &mut rng);
            let b = random_module(f, 5, &mut rng);
            let m = random_equivariant(&a, &b, &mut rng);
            EquivariantMap::new(a, b, m.matrix().clone()).unwrap();
        }
    }
}
