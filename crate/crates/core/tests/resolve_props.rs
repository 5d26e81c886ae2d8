use ppdim::exactlin::{Fp, Matrix};
use ppdim::kmod::{Invariants, ModuleRep};
use ppdim::oracle::random::{random_conjugate, random_invariants, random_module, trial_rng};
use ppdim::oracle::{has_split_through_summand, SearchBudget, Searcher};
use ppdim::pdist::size_module;
use ppdim::resolve::{
    build_resolution, cover_step, direct_sum_resolutions, tensor_resolutions, Sequence,
};

const CAP: u64 = 1 << 22;

#[test]
fn random_modules_resolve_exactly_at_formula_length() {
    for p in [3u64, 5, 7] {
        let f = Fp::new(p).unwrap();
        let mut rng = trial_rng(17, p);
        for _ in 0..50 {
            let m = random_module(f, 10, &mut rng);
            let res = build_resolution(&m).unwrap();
            assert!(res.check_exact(), "p = {p}, {}", m.decompose());
            assert!(res.all_terms_permutation());
            assert_eq!(res.length(), size_module(&m.decompose()));
            assert_eq!(res.module, m);
        }
    }
}

#[test]
fn cover_steps_lower_size_by_one_without_splitting() {
    for p in [3u64, 5] {
        let f = Fp::new(p).unwrap();
        let mut rng = trial_rng(23, p);
        let mut checked = 0;
        while checked < 40 {
            let m = random_module(f, 6, &mut rng);
            let inv = m.decompose();
            if inv.is_permutation() {
                continue;
            }
            let step = cover_step(&m).unwrap();
            assert!(step.check_exact());
            assert!(step.cover.is_permutation());
            assert_eq!(size_module(&step.kernel.decompose()) + 1, size_module(&inv));
            if (p as u128).pow(step.cover.dim() as u32) > CAP as u128 {
                continue;
            }
            let f_splits = has_split_through_summand(&step.f, CAP).unwrap();
            let g_splits = has_split_through_summand(&step.g, CAP).unwrap();
            let has_permutation_block = inv.parts().iter().any(|&x| x == 1 || x == p as usize);
            // blocks M_1 and M_p are covered by themselves, which splits
            assert_eq!(f_splits, has_permutation_block, "f on {inv}");
            assert!(!g_splits, "g on {inv}");
            checked += 1;
        }
    }
}

#[test]
fn search_never_beats_nor_exceeds_the_construction() {
    let f = Fp::new(3).unwrap();
    let searcher = Searcher::new(f, SearchBudget::default());
    for d in 1..=6 {
        for inv in Invariants::all_of_dim(f, d) {
            let res = build_resolution(&ModuleRep::from_invariants(&inv)).unwrap();
            assert_eq!(searcher.ppdim(&inv).unwrap().value, res.length(), "{inv}");
        }
    }
}

#[test]
fn search_of_sums_is_max_of_parts() {
    let f = Fp::new(3).unwrap();
    let searcher = Searcher::new(f, SearchBudget::default());
    let small: Vec<Invariants> = (1..=3).flat_map(|d| Invariants::all_of_dim(f, d)).collect();
    for a in &small {
        for b in &small {
            let sum = a.union(b).unwrap();
            let (va, vb) = (
                searcher.ppdim(a).unwrap().value,
                searcher.ppdim(b).unwrap().value,
            );
            assert_eq!(searcher.ppdim(&sum).unwrap().value, va.max(vb), "{a} + {b}");
        }
    }
}

#[test]
fn sums_and_products_of_resolutions() {
    for p in [3u64, 5] {
        let f = Fp::new(p).unwrap();
        let mut rng = trial_rng(29, p);
        for _ in 0..6 {
            let a = random_conjugate(&random_invariants(f, 3, &mut rng), &mut rng);
            let b = random_conjugate(&random_invariants(f, 2, &mut rng), &mut rng);
            let (ra, rb) = (build_resolution(&a).unwrap(), build_resolution(&b).unwrap());

            let sum = direct_sum_resolutions(&ra, &rb).unwrap();
            assert!(sum.check_exact());
            assert!(sum.all_terms_permutation());
            assert_eq!(sum.length(), ra.length().max(rb.length()));

            let prod = tensor_resolutions(&ra, &rb).unwrap();
            assert!(
                prod.check_exact(),
                "p = {p}: {} ⊗ {}",
                a.decompose(),
                b.decompose()
            );
            assert!(prod.all_terms_permutation());
            assert_eq!(prod.length(), ra.length() + rb.length());
            assert!(size_module(&prod.module.decompose()) <= prod.length());
        }
    }
}

#[test]
fn exactness_checker_rejects_broken_sequences() {
    let f = Fp::new(3).unwrap();
    // 0 -> F -> F -> 0 with the zero map is not exact
    let zero = Matrix::zeros(f, 1, 1);
    assert!(!Sequence::new(vec![1, 1], vec![zero]).unwrap().is_exact());
    let id = Matrix::identity(f, 1);
    assert!(Sequence::new(vec![1, 1], vec![id.clone()])
        .unwrap()
        .is_exact());
    // composite of two isomorphisms is nonzero
    assert!(!Sequence::new(vec![1, 1, 1], vec![id.clone(), id])
        .unwrap()
        .is_exact());
}

#[test]
fn json_terms_decompose_to_permutation_parts() {
    let f = Fp::new(7).unwrap();
    for x in 1..=7 {
        let json = build_resolution(&ModuleRep::cyclic(f, x).unwrap())
            .unwrap()
            .to_json(None);
        for t in &json.terms {
            assert!(t.iter().all(|&c| c == 1 || c == 7));
        }
        let text = serde_json::to_string(&json).unwrap();
        let back: ppdim::resolve::ResolutionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
    }
}
