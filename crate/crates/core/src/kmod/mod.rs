//! Modules over `k C_p`, identified with `k[T]/T^p` through `T = g - 1`.

mod element;
mod hom;
mod invariants;
mod module;
mod poly;

pub use element::{
    depth, generates_summand, generates_summand_perm, nilpotency_index, split_projection, Depth,
};
pub use hom::{hom_basis, hom_basis_blockwise, intertwiner_basis, EquivariantMap};
pub use invariants::{Invariants, PartsJson};
pub use module::ModuleRep;
pub use poly::TruncatedPoly;

/// `decompose ∘ from_invariants`, i.e. the cyclic-block model of `M`.
pub fn canonical_model(m: &ModuleRep) -> ModuleRep {
    ModuleRep::from_invariants(&m.decompose())
}
