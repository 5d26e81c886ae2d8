//! Randomized check of the kernel-size bound for surjections from
//! permutation modules that split off no summand.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::random::{random_equivariant, random_invariants, trial_rng};
use super::split::has_split_through_summand;
use crate::error::Result;
use crate::exactlin::{Fp, Matrix};
use crate::kmod::{EquivariantMap, Invariants, ModuleRep};
use crate::pdist::size_module;

const SURJECTION_ATTEMPTS: usize = 64;
const ELEMENT_CAP: u64 = 1 << 22;

/// How the no-split filter is decided, carried in every report.
pub const HYPOTHESIS: &str =
    "a trial is kept when neither f: P -> M nor the kernel inclusion g: K -> P \
has a nonzero u generating a direct summand of its source such that ind(h u) = ind(u) and h u \
generates a direct summand of the target (h = f or g)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub module: Vec<usize>,
    pub cover: Vec<usize>,
    pub kernel: Vec<usize>,
    pub size_module: usize,
    pub size_kernel: usize,
    /// `(c, c')` with `c` a non-permutation invariant of the target and `c'`
    /// a matching invariant of the kernel.
    pub pairs: Vec<(usize, usize)>,
    pub violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelTrialReport {
    pub p: u32,
    pub seed: u64,
    pub max_dim: usize,
    pub trials_attempted: u64,
    pub trials_passing_filter: u64,
    pub violations: u64,
    pub hypothesis: &'static str,
    /// Records of the trials that passed the filter.
    pub records: Vec<TrialRecord>,
}

impl KernelTrialReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// One sampled short exact sequence `0 → K → P → M → 0`.
pub struct Sample {
    pub f: EquivariantMap,
    pub g: EquivariantMap,
}

/// Random surjection from a permutation module of dimension at most
/// `max_dim` onto a random module, with the inclusion of its kernel.
pub fn sample_sequence<R: Rng>(field: Fp, max_dim: usize, rng: &mut R) -> Sample {
    let p = field.p_usize();
    let shapes: Vec<(usize, usize)> = (0..=max_dim / p)
        .flat_map(|a| (0..=max_dim - a * p).map(move |b| (a, b)))
        .filter(|&(a, b)| a + b > 0)
        .collect();
    loop {
        let &(a, b) = shapes.choose(rng).expect("max_dim >= 1");
        let cover = ModuleRep::from_invariants(&Invariants::permutation(field, a, b));
        let inv = random_invariants(field, rng.gen_range(1..=cover.dim()), rng);
        // the top of M needs one generator per block, and only M_1 tops
        // can be hit by the trivial summands of P
        if a + b.min(inv.multiplicity(1)) < inv.len() {
            continue;
        }
        let target = ModuleRep::from_invariants(&inv);
        for _ in 0..SURJECTION_ATTEMPTS {
            let f = random_equivariant(&cover, &target, rng);
            if f.is_surjective() {
                let g = kernel_inclusion(&f);
                return Sample { f, g };
            }
        }
    }
}

/// The inclusion `ker f → source`, with the kernel given the restricted action.
pub fn kernel_inclusion(f: &EquivariantMap) -> EquivariantMap {
    let field = f.source().field();
    let basis = Matrix::from_columns(field, f.source().dim(), &f.matrix().kernel_basis());
    let kernel = f.source().restrict(&basis).expect("kernel is a submodule");
    EquivariantMap::new(kernel, f.source().clone(), basis).expect("inclusion is equivariant")
}

/// Whether some invariant `c'` of the kernel lies in `{p - c, p - c + 1}`
/// for every invariant `c ∉ {1, p}` of the target.
fn match_invariants(
    p: usize,
    target: &Invariants,
    kernel: &Invariants,
) -> (Vec<(usize, usize)>, Option<usize>) {
    let mut pairs = Vec::new();
    for &c in target.parts() {
        if c == 1 || c == p {
            continue;
        }
        match kernel
            .parts()
            .iter()
            .find(|&&k| k == p - c || k == p - c + 1)
        {
            Some(&k) => pairs.push((c, k)),
            None => return (pairs, Some(c)),
        }
    }
    (pairs, None)
}

fn run_trial(field: Fp, seed: u64, trial: u64, max_dim: usize) -> Result<Option<TrialRecord>> {
    let mut rng = trial_rng(seed, trial);
    let Sample { f, g } = sample_sequence(field, max_dim, &mut rng);
    if has_split_through_summand(&f, ELEMENT_CAP)? || has_split_through_summand(&g, ELEMENT_CAP)? {
        return Ok(None);
    }
    let p = field.p_usize();
    let target = f.target().decompose();
    let kernel = g.source().decompose();
    let (sm, sk) = (size_module(&target), size_module(&kernel));
    let (pairs, unmatched) = match_invariants(p, &target, &kernel);
    let violation = if sk + 1 < sm {
        Some(format!("size(K) = {sk} < size(M) - 1 = {}", sm - 1))
    } else {
        unmatched.map(|c| {
            format!(
                "no kernel invariant in {{{}, {}}} for c = {c}",
                p - c,
                p - c + 1
            )
        })
    };
    Ok(Some(TrialRecord {
        trial,
        seed,
        module: target.parts().to_vec(),
        cover: f.source().decompose().parts().to_vec(),
        kernel: kernel.parts().to_vec(),
        size_module: sm,
        size_kernel: sk,
        pairs,
        violation,
    }))
}

/// Runs `trials` independent seeded trials at `field` with `dim P ≤ max_dim`.
/// Trial `i` depends only on `(seed, i)`.
pub fn check_kernel_bound(
    field: Fp,
    trials: u64,
    seed: u64,
    max_dim: usize,
) -> Result<KernelTrialReport> {
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(field, seed, t, max_dim.max(1)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(KernelTrialReport {
        p: field.p(),
        seed,
        max_dim,
        trials_attempted: trials,
        trials_passing_filter: records.len() as u64,
        violations: records.iter().filter(|r| r.violation.is_some()).count() as u64,
        hypothesis: HYPOTHESIS,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_exact_sequences() {
        let field = Fp::new(3).unwrap();
        let mut rng = trial_rng(11, 0);
        for _ in 0..30 {
            let s = sample_sequence(field, 6, &mut rng);
            assert!(s.f.is_surjective());
            assert!(s.g.is_injective());
            assert!(s.f.after(&s.g).unwrap().matrix().is_zero());
            assert_eq!(s.g.source().dim() + s.f.target().dim(), s.f.source().dim());
            assert!(s.f.source().is_permutation());
        }
    }

    #[test]
    fn report_is_reproducible() {
        let field = Fp::new(3).unwrap();
        let a = check_kernel_bound(field, 40, 5, 6).unwrap();
        let b = check_kernel_bound(field, 40, 5, 6).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
    }

    #[test]
    fn matching_finds_partner() {
        let f = Fp::new(5).unwrap();
        let m = Invariants::new(f, vec![3, 5, 1]).unwrap();
        let k = Invariants::new(f, vec![2]).unwrap();
        assert_eq!(match_invariants(5, &m, &k), (vec![(3, 2)], None));
        let k = Invariants::new(f, vec![4]).unwrap();
        assert_eq!(match_invariants(5, &m, &k).1, Some(3));
    }
}
