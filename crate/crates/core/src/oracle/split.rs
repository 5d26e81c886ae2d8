use crate::error::{Error, Result};
use crate::exactlin::projective_points;
use crate::kmod::{generates_summand, nilpotency_index, EquivariantMap};

/// Whether `f` carries some cyclic direct summand of its source isomorphically
/// onto a direct summand of its target.
///
/// Witness form: a nonzero `u` generating a summand of the source with
/// `ind(f u) = ind(u)` (so `f` is injective on `⟨u⟩`) and `f u` generating a
/// summand of the target. Every summand splits into cyclic ones, so this
/// matches the summand-isomorphism condition. Only one vector per line is
/// tried since all three conditions are invariant under scaling.
pub fn has_split_through_summand(f: &EquivariantMap, max_elements: u64) -> Result<bool> {
    let source = f.source();
    let field = source.field();
    let count = (field.p() as u64).checked_pow(source.dim() as u32);
    if count.is_none_or(|c| c > max_elements) {
        return Err(Error::BudgetExceeded(format!(
            "enumerating F_{}^{} exceeds {max_elements} elements",
            field.p(),
            source.dim()
        )));
    }
    for u in projective_points(field, source.dim()) {
        let image = f.apply(&u)?;
        let alpha = nilpotency_index(source, &u)?;
        if nilpotency_index(f.target(), &image)? != alpha {
            continue;
        }
        if generates_summand(source, &u)? && generates_summand(f.target(), &image)? {
            return Ok(true);
        }
    }
    Ok(false)
}
