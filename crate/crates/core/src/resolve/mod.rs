//! Permutation resolutions: the cover step, the spliced builder, and
//! exactness checks.

mod complex;
mod cover;
mod resolution;

pub use complex::Sequence;
pub use cover::{cover_step, CoverStep, TraceRecord};
pub use resolution::{
    build_resolution, direct_sum_resolutions, tensor_resolutions, PermResolution, ResolutionJson,
};

use crate::kmod::ModuleRep;

pub fn is_permutation(m: &ModuleRep) -> bool {
    m.is_permutation()
}
