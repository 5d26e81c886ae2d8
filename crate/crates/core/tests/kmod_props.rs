use proptest::prelude::*;

use ppdim::exactlin::{all_vectors, is_zero_vec, Fp, Matrix};
use ppdim::kmod::{
    depth, generates_summand, hom_basis_blockwise, intertwiner_basis, nilpotency_index,
    split_projection, Depth, Invariants, ModuleRep, TruncatedPoly,
};
use ppdim::oracle::summand_criteria;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

/// A prime with block sizes in range, total dimension at most `max_dim`.
fn invariants(max_dim: usize) -> impl Strategy<Value = Invariants> {
    prime().prop_flat_map(move |p| {
        prop::collection::vec(1..=p as usize, 1..=max_dim).prop_map(move |mut parts| {
            let mut total = 0;
            parts.retain(|&x| {
                total += x;
                total <= max_dim
            });
            if parts.is_empty() {
                parts.push(1);
            }
            Invariants::new(Fp::new(p).unwrap(), parts).unwrap()
        })
    })
}

/// A module isomorphic to `inv` in a random basis, with `S` the basis change.
fn conjugated(max_dim: usize) -> impl Strategy<Value = (Invariants, ModuleRep)> {
    invariants(max_dim).prop_flat_map(|inv| {
        let n = inv.dim();
        let p = inv.p();
        prop::collection::vec(0..p, n * n).prop_filter_map("singular", move |data| {
            let f = inv.field();
            let s = Matrix::from_data(f, n, n, data).unwrap();
            let s_inv = s.inverse()?;
            let canon = ModuleRep::from_invariants(&inv);
            let action = s.mul(canon.action()).unwrap().mul(&s_inv).unwrap();
            Some((inv.clone(), ModuleRep::new(action).unwrap()))
        })
    })
}

fn with_element(max_dim: usize) -> impl Strategy<Value = (ModuleRep, Vec<u32>)> {
    conjugated(max_dim).prop_flat_map(|(_, m)| {
        let p = m.p();
        let n = m.dim();
        (Just(m), prop::collection::vec(0..p, n)).prop_filter("nonzero", |(_, v)| !is_zero_vec(v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decompose_is_conjugation_invariant((inv, m) in conjugated(8)) {
        prop_assert_eq!(m.decompose(), inv);
    }

    #[test]
    fn jordan_basis_conjugates_to_canonical((inv, m) in conjugated(7)) {
        let (got, s) = m.jordan_basis();
        prop_assert_eq!(&got, &inv);
        let s_inv = s.inverse().unwrap();
        let canon = s_inv.mul(m.action()).unwrap().mul(&s).unwrap();
        let model = ModuleRep::from_invariants(&inv);
        prop_assert_eq!(&canon, model.action());
    }

    #[test]
    fn summand_criteria_agree_in_any_basis((m, v) in with_element(6)) {
        let c = summand_criteria(&m, &v).unwrap();
        prop_assert!(c[0] == c[1] && c[1] == c[2], "{:?}", c);
    }

    #[test]
    fn projection_is_equivariant_idempotent_onto_cyclic((m, v) in with_element(6)) {
        if let Some(pi) = split_projection(&m, &v).unwrap() {
            let sq = pi.matrix().mul(pi.matrix()).unwrap();
            prop_assert_eq!(&sq, pi.matrix());
            prop_assert_eq!(pi.apply(&v).unwrap(), v.clone());
            prop_assert_eq!(pi.rank(), nilpotency_index(&m, &v).unwrap());
        }
    }

    #[test]
    fn depth_and_index_move_with_t((m, v) in with_element(7)) {
        let alpha = nilpotency_index(&m, &v).unwrap();
        let tv = m.apply(&v).unwrap();
        prop_assert_eq!(nilpotency_index(&m, &tv).unwrap(), alpha - 1);
        let Depth::Finite(d) = depth(&m, &v).unwrap() else { panic!("nonzero has finite depth") };
        match depth(&m, &tv).unwrap() {
            Depth::Finite(e) => prop_assert!(e > d),
            Depth::Infinite => prop_assert_eq!(alpha, 1),
        }
        // depth + index cannot exceed the largest block
        prop_assert!(d + alpha <= m.decompose().parts()[0]);
    }

    #[test]
    fn index_one_elements_in_free_modules_never_split(k in 1usize..=3, p in prop::sample::select(vec![3u64, 5])) {
        let f = Fp::new(p).unwrap();
        let m = ModuleRep::from_invariants(&Invariants::permutation(f, k, 0));
        for v in all_vectors(f, m.dim()).filter(|v| !is_zero_vec(v)).take(500) {
            if nilpotency_index(&m, &v).unwrap() == 1 {
                prop_assert!(!generates_summand(&m, &v).unwrap());
            }
        }
    }

    #[test]
    fn truncated_inverse_multiplies_to_one(p in prime(), order in 1usize..=8, tail in prop::collection::vec(0u32..97, 8), lead in 1u32..97) {
        let f = Fp::new(p).unwrap();
        let lead = lead % f.p();
        prop_assume!(lead != 0);
        let mut coeffs = vec![lead];
        coeffs.extend(tail.iter().map(|c| c % f.p()));
        let u = TruncatedPoly::new(f, &coeffs, order).unwrap();
        let g = u.invert().unwrap();
        prop_assert_eq!(u.mul(&g).unwrap(), TruncatedPoly::one(f, order).unwrap());
        prop_assert_eq!(g.mul(&u).unwrap(), TruncatedPoly::one(f, order).unwrap());
    }

    #[test]
    fn tensor_dimensions_and_nilpotency(a in invariants(5), parts in prop::collection::vec(1usize..=7, 1..3)) {
        let f = a.field();
        let parts: Vec<usize> = parts.into_iter().map(|x| x.min(f.p_usize())).collect();
        let b = Invariants::new(f, parts).unwrap();
        let (ma, mb) = (ModuleRep::from_invariants(&a), ModuleRep::from_invariants(&b));
        let t = ma.tensor(&mb).unwrap();
        prop_assert_eq!(t.dim(), a.dim() * b.dim());
        let s = ma.direct_sum(&mb).unwrap();
        prop_assert_eq!(s.decompose(), a.union(&b).unwrap());
    }

    #[test]
    fn free_module_absorbs_tensor(a in invariants(6)) {
        let f = a.field();
        let free = ModuleRep::cyclic(f, f.p_usize()).unwrap();
        let t = free.tensor(&ModuleRep::from_invariants(&a)).unwrap();
        prop_assert_eq!(t.decompose(), Invariants::permutation(f, a.dim(), 0));
    }

    #[test]
    fn hom_dimension_two_routes((a, ma) in conjugated(5), (b, mb) in conjugated(5)) {
        prop_assume!(a.p() == b.p());
        let block = hom_basis_blockwise(&ma, &mb).unwrap();
        let linear = intertwiner_basis(&ma, &mb).unwrap();
        let want: usize = a.parts().iter().flat_map(|&x| b.parts().iter().map(move |&y| x.min(y))).sum();
        prop_assert_eq!(block.len(), want);
        prop_assert_eq!(linear.len(), want);
        let mats: Vec<Vec<u32>> = block.iter().map(|h| h.matrix().to_rows().concat()).collect();
        prop_assert_eq!(Matrix::from_columns(a.field(), a.dim() * b.dim(), &mats).rank(), want);
    }
}

/// Inverse found by trying every polynomial, for small orders.
#[test]
fn truncated_inverse_matches_exhaustive_search() {
    for p in [2u64, 3, 5] {
        let f = Fp::new(p).unwrap();
        for order in 1..=3 {
            for c in all_vectors(f, order).filter(|c| c[0] != 0) {
                let u = TruncatedPoly::new(f, &c, order).unwrap();
                let one = TruncatedPoly::one(f, order).unwrap();
                let found: Vec<Vec<u32>> = all_vectors(f, order)
                    .filter(|g| u.mul(&TruncatedPoly::new(f, g, order).unwrap()).unwrap() == one)
                    .collect();
                assert_eq!(found.len(), 1);
                assert_eq!(u.invert().unwrap().coeffs(), found[0].as_slice());
            }
        }
    }
}

#[test]
fn non_nilpotent_matrix_is_rejected() {
    let f = Fp::new(3).unwrap();
    let n = Matrix::from_rows(f, &[[1, 0], [0, 0]]).unwrap();
    assert!(ModuleRep::new(n).is_err());
}
