//! Exact dense linear algebra over a prime field.

mod field;
mod matrix;
mod subspace;

pub use field::{is_prime, Fp, MAX_PRIME};
pub use matrix::{Echelon, Matrix};
pub use subspace::Subspace;

/// All vectors of F_p^n, in odometer order (first coordinate fastest).
pub fn all_vectors(field: Fp, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = field.p();
    let total = (p as u64)
        .checked_pow(n as u32)
        .expect("vector space too large to enumerate");
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; n];
        for x in v.iter_mut() {
            *x = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        v
    })
}

/// One representative per line of F_p^n: nonzero vectors whose last nonzero
/// coordinate is 1.
pub fn projective_points(field: Fp, n: usize) -> impl Iterator<Item = Vec<u32>> {
    all_vectors(field, n).filter(|v| v.iter().rev().find(|&&x| x != 0) == Some(&1))
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}
