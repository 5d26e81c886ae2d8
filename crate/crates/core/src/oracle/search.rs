//! Exhaustive search for the shortest permutation resolution of a module.
//!
//! `within(M, d)` holds when `M` is a permutation module or some surjection
//! `a·M_p ⊕ b·M_1 → M` (with `a, b` at most the number of blocks of `M`) has a
//! kernel `K` with `within(K, d - 1)`. Surjections are enumerated up to the
//! symmetries that preserve the kernel's isomorphism class:
//!
//! * scaling a generator image by a unit,
//! * permuting generators of equal type,
//! * applying an automorphism of `M` (used for the first generator only).
//!
//! Partial assignments are cut once the images can no longer span `M / TM`.

use std::cell::{Cell, RefCell};
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vec, projective_points, Fp, Matrix, Subspace};
use crate::kmod::{hom_basis_blockwise, Invariants, ModuleRep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Cap on copies of `M_p` in one cover, on top of the block-count cap.
    pub max_p_copies: usize,
    /// Cap on copies of `M_1` in one cover, on top of the block-count cap.
    pub max_1_copies: usize,
    pub max_depth: usize,
    /// Total surjections examined across the whole search.
    pub max_maps: u64,
    /// Largest `|M|` for which elements are enumerated.
    pub max_elements: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_p_copies: 8,
            max_1_copies: 8,
            max_depth: 8,
            max_maps: 20_000_000,
            max_elements: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// Value 0 (permutation module) or 1 (a permutation kernel was exhibited).
    Certified,
    /// Minimal among covers allowed by the budget caps.
    WithinBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleOutcome {
    pub value: usize,
    pub certification: Certification,
    pub maps_examined: u64,
    pub classes_visited: usize,
}

/// Shortest permutation resolution length of `m`, found by search.
pub fn brute_ppdim(m: &ModuleRep, budget: &SearchBudget) -> Result<OracleOutcome> {
    Searcher::new(m.field(), *budget).ppdim(&m.decompose())
}

#[derive(Default)]
struct Node {
    /// `within(·, d)` is false for every `d` below this.
    refuted_below: usize,
    /// Smallest `d` known to satisfy `within(·, d)`.
    upper: Option<usize>,
    /// Every kernel class reachable in one step, once fully enumerated.
    kernels: Option<Rc<Vec<Invariants>>>,
}

/// Search state shared across queries at one prime. Not `Sync`.
pub struct Searcher {
    field: Fp,
    budget: SearchBudget,
    memo: RefCell<HashMap<Invariants, Node>>,
    targets: RefCell<HashMap<Invariants, Rc<Target>>>,
    maps: Cell<u64>,
}

impl Searcher {
    pub fn new(field: Fp, budget: SearchBudget) -> Self {
        Searcher {
            field,
            budget,
            memo: RefCell::new(HashMap::new()),
            targets: RefCell::new(HashMap::new()),
            maps: Cell::new(0),
        }
    }

    pub fn maps_examined(&self) -> u64 {
        self.maps.get()
    }

    pub fn ppdim(&self, inv: &Invariants) -> Result<OracleOutcome> {
        if inv.field() != self.field {
            return Err(Error::FieldMismatch(inv.p(), self.field.p()));
        }
        for d in 0..=self.budget.max_depth {
            if self.within(inv, d)? {
                return Ok(OracleOutcome {
                    value: d,
                    certification: if d <= 1 {
                        Certification::Certified
                    } else {
                        Certification::WithinBudget
                    },
                    maps_examined: self.maps.get(),
                    classes_visited: self.memo.borrow().len(),
                });
            }
        }
        Err(Error::BudgetExceeded(format!(
            "no permutation resolution of length <= {} for {inv}",
            self.budget.max_depth
        )))
    }

    /// Whether `inv` has a permutation resolution of length at most `d`.
    pub fn within(&self, inv: &Invariants, d: usize) -> Result<bool> {
        if inv.is_permutation() {
            return Ok(true);
        }
        if d == 0 {
            return Ok(false);
        }
        let known = {
            let memo = self.memo.borrow();
            match memo.get(inv) {
                Some(node) if node.upper.is_some_and(|u| u <= d) => return Ok(true),
                Some(node) if d < node.refuted_below => return Ok(false),
                Some(node) => node.kernels.clone(),
                None => None,
            }
        };
        let result = match known {
            Some(kernels) => {
                let mut hit = false;
                for k in kernels.iter() {
                    if self.within(k, d - 1)? {
                        hit = true;
                        break;
                    }
                }
                hit
            }
            None => {
                let target = self.target(inv)?;
                let mut seen = HashSet::new();
                let mut list = Vec::new();
                let stopped = self.for_each_kernel(&target, &mut |k| {
                    if !seen.insert(k.clone()) {
                        return Ok(false);
                    }
                    list.push(k.clone());
                    self.within(&k, d - 1)
                })?;
                if !stopped {
                    list.sort();
                    self.memo
                        .borrow_mut()
                        .entry(inv.clone())
                        .or_default()
                        .kernels = Some(Rc::new(list));
                }
                stopped
            }
        };
        let mut memo = self.memo.borrow_mut();
        let node = memo.entry(inv.clone()).or_default();
        if result {
            node.upper = Some(node.upper.map_or(d, |u| u.min(d)));
        } else {
            node.refuted_below = node.refuted_below.max(d + 1);
        }
        Ok(result)
    }

    fn target(&self, inv: &Invariants) -> Result<Rc<Target>> {
        if let Some(t) = self.targets.borrow().get(inv) {
            return Ok(t.clone());
        }
        let t = Rc::new(Target::new(inv, &self.budget)?);
        self.targets.borrow_mut().insert(inv.clone(), t.clone());
        Ok(t)
    }

    /// Calls `visit` on the kernel class of every enumerated surjection onto
    /// the target; stops and returns `true` as soon as `visit` does.
    fn for_each_kernel(
        &self,
        t: &Target,
        visit: &mut dyn FnMut(Invariants) -> Result<bool>,
    ) -> Result<bool> {
        let l = t.inv.len();
        let ones = t.inv.multiplicity(1);
        let mut shapes = Vec::new();
        for a in 0..=l.min(self.budget.max_p_copies) {
            for b in 0..=l.min(self.budget.max_1_copies) {
                if a + b.min(ones) >= l {
                    shapes.push((a, b));
                }
            }
        }
        shapes.sort_by_key(|&(a, b)| (a + b, a));
        for (a, b) in shapes {
            let cover = Cover::new(self.field, a, b);
            let mut images = Vec::with_capacity(a + b);
            let top = Subspace::span(self.field, l, &[]);
            if self.descend(t, &cover, &mut images, &top, 0, visit)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn descend(
        &self,
        t: &Target,
        cover: &Cover,
        images: &mut Vec<usize>,
        top: &Subspace,
        min: usize,
        visit: &mut dyn FnMut(Invariants) -> Result<bool>,
    ) -> Result<bool> {
        let l = t.inv.len();
        let k = images.len();
        let total = cover.a + cover.b;
        if k == total {
            if top.dim() < l {
                return Ok(false);
            }
            let seen = self.maps.get() + 1;
            if seen > self.budget.max_maps {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} maps examined",
                    self.budget.max_maps
                )));
            }
            self.maps.set(seen);
            return visit(t.kernel(cover, images));
        }
        let is_u = k < cover.a;
        let cands = if is_u { &t.u_cands } else { &t.w_cands };
        let start = if k == 0 || k == cover.a { 0 } else { min };
        let remaining = total - k - 1;
        for idx in start..cands.len() {
            if k == 0 && !cands[idx].rep {
                continue;
            }
            let mut next = top.clone();
            next.insert(&cands[idx].top);
            if next.dim() + remaining < l {
                continue;
            }
            images.push(idx);
            let hit = self.descend(t, cover, images, &next, idx, visit)?;
            images.pop();
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

struct Candidate {
    vector: Vec<u32>,
    /// Image in `M / TM`.
    top: Vec<u32>,
    /// Smallest index in its automorphism orbit.
    rep: bool,
}

/// Canonical model of a target module with its candidate generator images.
struct Target {
    inv: Invariants,
    module: ModuleRep,
    /// Images of an `M_p` generator: all of `M`, one vector per line, then zero.
    u_cands: Vec<Candidate>,
    /// Images of an `M_1` generator: the socle, one vector per line, then zero.
    w_cands: Vec<Candidate>,
}

impl Target {
    fn new(inv: &Invariants, budget: &SearchBudget) -> Result<Self> {
        let field = inv.field();
        let dim = inv.dim();
        let size = (field.p() as u64).checked_pow(dim as u32);
        if size.is_none_or(|s| s > budget.max_elements) {
            return Err(Error::BudgetExceeded(format!(
                "module {inv} has more than {} elements",
                budget.max_elements
            )));
        }
        let module = ModuleRep::from_invariants(inv);
        let mut offsets = Vec::with_capacity(inv.len());
        let mut acc = 0;
        for &x in inv.parts() {
            offsets.push(acc);
            acc += x;
        }
        let top_of = |v: &[u32]| offsets.iter().map(|&o| v[o]).collect::<Vec<u32>>();

        let free = ModuleRep::cyclic(field, field.p_usize())?;
        let trivial = ModuleRep::cyclic(field, 1)?;
        let u_gen = generator_images(&free, &module)?;
        let w_gen = generator_images(&trivial, &module)?;
        let autos = automorphism_generators(&module)?;

        let build = |gens: &Matrix| -> Vec<Candidate> {
            let mut vectors: Vec<Vec<u32>> = projective_points(field, gens.cols())
                .map(|c| normalize(field, &gens.mul_vec(&c).expect("shape")))
                .filter(|v| !is_zero_vec(v))
                .collect();
            vectors.sort_by_key(|v| (v.iter().filter(|&&c| c != 0).count(), v.clone()));
            vectors.dedup();
            let reps = orbit_reps(field, &vectors, &autos);
            let mut out: Vec<Candidate> = vectors
                .into_iter()
                .zip(reps)
                .map(|(v, rep)| Candidate {
                    top: top_of(&v),
                    vector: v,
                    rep,
                })
                .collect();
            out.push(Candidate {
                vector: vec![0; dim],
                top: vec![0; offsets.len()],
                rep: true,
            });
            out
        };
        let u_cands = build(&u_gen);
        let w_cands = build(&w_gen);
        Ok(Target {
            inv: inv.clone(),
            module,
            u_cands,
            w_cands,
        })
    }

    fn kernel(&self, cover: &Cover, images: &[usize]) -> Invariants {
        let field = self.inv.field();
        let p = field.p_usize();
        let mut columns = Vec::with_capacity(cover.dim);
        for (k, &idx) in images.iter().enumerate() {
            if k < cover.a {
                let mut v = self.u_cands[idx].vector.clone();
                for _ in 0..p {
                    let next = self.module.apply(&v).expect("shape");
                    columns.push(std::mem::replace(&mut v, next));
                }
            } else {
                columns.push(self.w_cands[idx].vector.clone());
            }
        }
        let f = Matrix::from_columns(field, self.inv.dim(), &columns);
        let basis = f.kernel_basis();
        let m = basis.len();
        let kmat = Matrix::from_columns(field, cover.dim, &basis);
        // dims[i] = dim(K ∩ ker T^i)
        let mut dims = vec![0usize; p + 1];
        dims[p] = m;
        for i in 1..p {
            dims[i] = m - cover.powers[i].mul(&kmat).expect("shape").rank();
        }
        let at_least: Vec<usize> = (1..=p).map(|i| dims[i] - dims[i - 1]).collect();
        let mut parts = Vec::with_capacity(m);
        for i in 1..=p {
            let exact = at_least[i - 1] - at_least.get(i).copied().unwrap_or(0);
            parts.extend(std::iter::repeat_n(i, exact));
        }
        Invariants::new(field, parts).expect("parts bounded by p")
    }
}

/// Canonical `a·M_p ⊕ b·M_1` with the powers of its action.
struct Cover {
    a: usize,
    b: usize,
    dim: usize,
    powers: Vec<Matrix>,
}

impl Cover {
    fn new(field: Fp, a: usize, b: usize) -> Self {
        let module = ModuleRep::from_invariants(&Invariants::permutation(field, a, b));
        let dim = module.dim();
        let mut powers = vec![Matrix::identity(field, dim)];
        for i in 1..field.p_usize() {
            let next = powers[i - 1].mul(module.action()).expect("square");
            powers.push(next);
        }
        Cover { a, b, dim, powers }
    }
}

/// Columns: images of the generator of cyclic `source` under a basis of `Hom(source, m)`.
fn generator_images(source: &ModuleRep, m: &ModuleRep) -> Result<Matrix> {
    let mut e = vec![0; source.dim()];
    e[0] = 1;
    let cols = hom_basis_blockwise(source, m)?
        .iter()
        .map(|h| h.apply(&e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(m.field(), m.dim(), &cols))
}

/// Invertible maps `1 + c·φ` for `φ` in a basis of `End(m)` and units `c`.
fn automorphism_generators(m: &ModuleRep) -> Result<Vec<Matrix>> {
    let field = m.field();
    let id = Matrix::identity(field, m.dim());
    let mut gens = Vec::new();
    for phi in hom_basis_blockwise(m, m)? {
        for c in 1..field.p() {
            let g = id.add(&phi.matrix().scale(c))?;
            if g.rank() == m.dim() {
                gens.push(g);
            }
        }
    }
    Ok(gens)
}

/// Last nonzero coordinate scaled to 1.
fn normalize(field: Fp, v: &[u32]) -> Vec<u32> {
    match v.iter().rev().find(|&&c| c != 0) {
        None => v.to_vec(),
        Some(&lead) => {
            let s = field.inv(lead).expect("nonzero");
            v.iter().map(|&c| field.mul(c, s)).collect()
        }
    }
}

/// For each vector, whether it has the smallest index in its orbit under the
/// group generated by `gens` acting on lines.
fn orbit_reps(field: Fp, vectors: &[Vec<u32>], gens: &[Matrix]) -> Vec<bool> {
    let index: HashMap<&[u32], usize> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let mut parent: Vec<usize> = (0..vectors.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, v) in vectors.iter().enumerate() {
        for g in gens {
            let w = normalize(field, &g.mul_vec(v).expect("shape"));
            if let Some(&j) = index.get(w.as_slice()) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    (0..vectors.len())
        .map(|i| find(&mut parent, i) == i)
        .collect()
}
