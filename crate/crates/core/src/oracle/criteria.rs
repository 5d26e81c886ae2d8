//! Exhaustive agreement checks between independent summand criteria.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exactlin::{all_vectors, is_zero_vec, Fp};
use crate::kmod::{
    depth, generates_summand, generates_summand_perm, nilpotency_index, split_projection, Depth,
    Invariants, ModuleRep,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub module: Vec<usize>,
    pub element: Vec<u32>,
    /// Verdicts in the order the suite lists its criteria.
    pub verdicts: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub p: u32,
    pub max_dim: usize,
    pub modules: usize,
    pub elements: u64,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// The three summand criteria for a nonzero `v` of index `α`:
/// an explicit equivariant projection onto `⟨v⟩`,
/// `dep(T^i v) = i` for all `i < α`,
/// and `dep(T^{α-1} v) = α - 1`.
pub fn summand_criteria(m: &ModuleRep, v: &[u32]) -> Result<[bool; 3]> {
    let alpha = nilpotency_index(m, v)?;
    let projection = match split_projection(m, v)? {
        Some(pi) => pi.apply(v)? == v && pi.rank() == alpha,
        None => false,
    };
    let mut full = true;
    let mut w = v.to_vec();
    for i in 0..alpha {
        if depth(m, &w)? != Depth::Finite(i) {
            full = false;
            break;
        }
        w = m.apply(&w)?;
    }
    Ok([projection, full, generates_summand(m, v)?])
}

fn modules_up_to(field: Fp, max_dim: usize, keep: impl Fn(&Invariants) -> bool) -> Vec<Invariants> {
    (1..=max_dim)
        .flat_map(|d| Invariants::all_of_dim(field, d))
        .filter(|inv| keep(inv))
        .collect()
}

fn sweep(
    field: Fp,
    max_dim: usize,
    modules: Vec<Invariants>,
    verdicts: impl Fn(&ModuleRep, &[u32]) -> Result<Vec<bool>> + Sync,
) -> Result<AgreementReport> {
    let per_module: Vec<(u64, Vec<Disagreement>)> = modules
        .par_iter()
        .map(|inv| {
            let m = ModuleRep::from_invariants(inv);
            let mut count = 0;
            let mut bad = Vec::new();
            for v in all_vectors(field, m.dim()).filter(|v| !is_zero_vec(v)) {
                count += 1;
                let vs = verdicts(&m, &v)?;
                if vs.iter().any(|&b| b != vs[0]) {
                    bad.push(Disagreement {
                        module: inv.parts().to_vec(),
                        element: v,
                        verdicts: vs,
                    });
                }
            }
            Ok((count, bad))
        })
        .collect::<Result<_>>()?;
    Ok(AgreementReport {
        p: field.p(),
        max_dim,
        modules: modules.len(),
        elements: per_module.iter().map(|(c, _)| c).sum(),
        disagreements: per_module.into_iter().flat_map(|(_, d)| d).collect(),
    })
}

/// Every nonzero element of every module of dimension at most `max_dim`.
pub fn check_summand_criteria(field: Fp, max_dim: usize) -> Result<AgreementReport> {
    let modules = modules_up_to(field, max_dim, |_| true);
    sweep(field, max_dim, modules, |m, v| {
        Ok(summand_criteria(m, v)?.to_vec())
    })
}

/// The permutation-module test against the general one, over every nonzero
/// element of every permutation module of dimension at most `max_dim`.
pub fn check_permutation_criterion(field: Fp, max_dim: usize) -> Result<AgreementReport> {
    let modules = modules_up_to(field, max_dim, Invariants::is_permutation);
    sweep(field, max_dim, modules, |m, v| {
        Ok(vec![
            generates_summand_perm(m, v)?,
            generates_summand(m, v)?,
        ])
    })
}
