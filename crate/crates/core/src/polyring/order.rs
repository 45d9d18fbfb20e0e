use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{var_mask, Monomial};

/// Monomial orders on packed monomials.
///
/// `Elimination` compares the monomials restricted to the masked block first
/// (graded reverse lexicographic on that block) and breaks ties with grevlex on
/// the complementary block. Every monomial involving a masked variable is then
/// larger than every monomial free of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Elimination { block: u128 },
}

impl MonomialOrder {
    pub fn elimination(vars: impl IntoIterator<Item = usize>) -> Self {
        let block = var_mask(vars);
        if block == 0 {
            MonomialOrder::Grevlex
        } else {
            MonomialOrder::Elimination { block }
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex_tiebreak(a.packed(), b.packed())),
            MonomialOrder::Lex => a.packed().cmp(&b.packed()),
            MonomialOrder::Elimination { block } => {
                let (ab, bb) = (a.packed() & block, b.packed() & block);
                let da = a.masked_degree(block);
                let db = b.masked_degree(block);
                da.cmp(&db)
                    .then_with(|| revlex_tiebreak(ab, bb))
                    .then_with(|| (a.degree() - da).cmp(&(b.degree() - db)))
                    .then_with(|| revlex_tiebreak(a.packed() & !block, b.packed() & !block))
            }
        }
    }

    /// Mask of the eliminated block, zero for the other orders.
    pub fn eliminated_block(&self) -> u128 {
        match *self {
            MonomialOrder::Elimination { block } => block,
            _ => 0,
        }
    }
}

/// Reverse-lexicographic tie break for monomials of equal degree: the last
/// variable where the exponents differ decides, smaller exponent wins.
#[inline]
fn revlex_tiebreak(a: u128, b: u128) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let sh = diff.trailing_zeros() & !7;
    let ea = (a >> sh) & 0xff;
    let eb = (b >> sh) & 0xff;
    eb.cmp(&ea)
}
