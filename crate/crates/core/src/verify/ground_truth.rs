use crate::blowup::{BlowupInstance, BlowupRings, T_BLOCK, X_BLOCK};
use crate::groebner::{Budget, GbError, IdealHandle};
use crate::polyring::{Polynomial, RingDescriptor, RingError, VariableBlock};

/// Kernel of `S -> R[t]`, `T_i ↦ g_i t`, for `g` given in `S` (x-variables
/// only) and one `T` variable per generator. Computed in `S[t]` with `t`
/// eliminated; the `T` block is weighted by `deg g + 1` so the generators
/// `T_i - g_i t` are weighted-homogeneous.
pub fn rees_ideal_of(rings: &BlowupRings, gens: &[Polynomial], budget: Budget) -> Result<IdealHandle, GbError> {
    let s = &rings.s;
    if gens.len() != rings.n() {
        return Err(RingError::Parse(format!("{} generators for {} T-variables", gens.len(), rings.n())).into());
    }
    let delta = gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let homogeneous = gens.iter().all(|g| g.is_homogeneous() && g.total_degree().is_none_or(|e| e == delta));
    let t_weight = if homogeneous { delta + 1 } else { 1 };
    let mut blocks: Vec<VariableBlock> = s.blocks().to_vec();
    for b in &mut blocks {
        if b.name == T_BLOCK {
            b.weight = t_weight;
        }
    }
    let t_name = s.fresh_name("t");
    blocks.push(VariableBlock::new("rees_t", vec![t_name], (0, 0)));
    let big = RingDescriptor::new(s.characteristic() as u64, blocks)?;
    let t = Polynomial::variable(&big, big.nvars() - 1);
    let t_vars = s.block_variables(T_BLOCK).ok_or_else(|| RingError::UnknownBlock(T_BLOCK.into()))?;
    let mut lifted = Vec::with_capacity(gens.len());
    for (g, &ti) in gens.iter().zip(&t_vars) {
        let ti = Polynomial::variable(&big, ti);
        lifted.push(&ti - &(&g.map_to_ring(&big)? * &t));
    }
    let elim = IdealHandle::new(&big, lifted)?.with_budget(budget).eliminate(&[big.nvars() - 1])?;
    Ok(elim.map_to_ring(s)?.with_budget(budget))
}

/// `𝒥` for an instance, from the generators `g` alone.
pub fn rees_by_elimination(inst: &BlowupInstance, budget: Budget) -> Result<IdealHandle, GbError> {
    let rings = inst.rings();
    let gens = inst.generators().iter().map(|g| g.map_to_ring(&rings.s)).collect::<Result<Vec<_>, _>>()?;
    rees_ideal_of(rings, &gens, budget)
}

/// `I(X) = 𝒥 ∩ T`.
pub fn fiber_ideal(rees: &IdealHandle, rings: &BlowupRings) -> Result<IdealHandle, GbError> {
    let elim = rees.eliminate_block(X_BLOCK)?;
    Ok(elim.map_to_ring(&rings.t)?.with_budget(rees.budget()))
}
