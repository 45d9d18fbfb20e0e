use serde::{Deserialize, Serialize};

use super::instance::BlowupInstance;
use super::{monomials_of_degree, BlowupError, BlowupRings, T_BLOCK};
use crate::groebner::IdealHandle;
use crate::pfaffian::{subsets, PfaffianTable};
use crate::polyring::{Monomial, Polynomial};

/// How to produce generators of `C(φ)`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContentMethod {
    /// Coefficients of `F_{n+d}` as a polynomial in `x`.
    Content,
    /// `f_M` built from `φ` with row/column `i` removed and `d x d` minors of `B`.
    FM { i: usize },
    /// `h_M` built from Pfaffians of `φ` and minors of `B` with row `j` removed.
    HM { j: usize },
}

/// Coefficients in `T` of `p ∈ S` viewed as a polynomial in `x`.
pub(crate) fn t_content(p: &Polynomial, rings: &BlowupRings) -> Result<Vec<Polynomial>, BlowupError> {
    p.content_in_block(T_BLOCK)?
        .into_iter()
        .map(|(_, c)| c.map_to_ring(&rings.t).map_err(Into::into))
        .collect()
}

/// Generators of `C(φ)` by the chosen method.
pub fn content_ideal(inst: &BlowupInstance, method: ContentMethod) -> Result<IdealHandle, BlowupError> {
    let rings = inst.rings();
    let (d, n) = (inst.d(), inst.n());
    match method {
        ContentMethod::Content => return Ok(inst.content().clone()),
        ContentMethod::FM { i } if i == 0 || i > n => {
            return Err(BlowupError::InvalidParameters(format!("f_M index i = {i} outside 1..={n}")));
        }
        ContentMethod::HM { j } if j == 0 || j > d => {
            return Err(BlowupError::InvalidParameters(format!("h_M index j = {j} outside 1..={d}")));
        }
        _ => {}
    }
    if n <= d || (n + d) % 2 == 0 {
        return Ok(IdealHandle::zero(&rings.t));
    }
    let gens = match method {
        ContentMethod::FM { i } => f_m_generators(inst, i - 1)?,
        ContentMethod::HM { j } => h_m_generators(inst, j - 1)?,
        ContentMethod::Content => unreachable!("handled above"),
    };
    Ok(IdealHandle::new(&rings.t, gens)?)
}

fn contraction(pf: &Polynomial, exps: &[u32]) -> i64 {
    let m = Monomial::from_exponents(exps).expect("bounded degree");
    pf.ring().field().to_signed(pf.coefficient(&m))
}

/// `f_M = (1/T_i)·Σ_J (-1)^|J| (M∘Pf_J(φ_i))·Δ_J(B)` over `J ⊆ [n]∖{i}`, `|J| = d`,
/// with `|J| = Σ j - d + #{j ∈ J : j < i}` (1-based indices).
fn f_m_generators(inst: &BlowupInstance, i: usize) -> Result<Vec<Polynomial>, BlowupError> {
    let rings = inst.rings();
    let (d, n) = (inst.d(), inst.n());
    let b = inst.jacobian_dual();
    let mut table = PfaffianTable::new(inst.presentation().phi())?;
    let others: Vec<usize> = (0..n).filter(|&k| k != i).collect();
    let mut terms = Vec::new();
    for pick in subsets(n - 1, d) {
        let cols: Vec<usize> = pick.iter().map(|&k| others[k]).collect();
        let below = cols.iter().filter(|&&c| c < i).count();
        let weight: usize = cols.iter().map(|c| c + 1).sum::<usize>() + below - d;
        let mut deleted = cols.clone();
        deleted.push(i);
        let pf = table.pfaffian_deleting(&deleted);
        if pf.is_zero() {
            continue;
        }
        let delta = b.delta(&cols, None)?;
        terms.push((if weight % 2 == 1 { -1 } else { 1 }, pf, delta));
    }
    let t_i = Polynomial::variable(&rings.t, i);
    let mut out = Vec::new();
    for exps in monomials_of_degree(d, ((n - d - 1) / 2) as u32) {
        let mut acc = Polynomial::zero(&rings.t);
        for (sign, pf, delta) in &terms {
            let c = contraction(pf, &exps);
            if c != 0 {
                acc = &acc + &delta.scale(sign * c);
            }
        }
        let f = acc
            .exact_div(&t_i)
            .map_err(|e| BlowupError::Inconsistent(format!("f_M not divisible by T_{}: {e}", i + 1)))?;
        if !f.is_zero() {
            out.push(f);
        }
    }
    Ok(out)
}

/// `h_M = Σ_J (-1)^||J|| (M∘Pf_J(φ))·Δ_J(B_j)` over `J ⊆ [n]`, `|J| = d - 1`,
/// for `M` of degree `(n-d+1)/2` divisible by `y_j`.
fn h_m_generators(inst: &BlowupInstance, j: usize) -> Result<Vec<Polynomial>, BlowupError> {
    let rings = inst.rings();
    let (d, n) = (inst.d(), inst.n());
    let b = inst.jacobian_dual();
    let mut table = PfaffianTable::new(inst.presentation().phi())?;
    let mut terms = Vec::new();
    for cols in subsets(n, d - 1) {
        let weight: usize = cols.iter().map(|c| c + 1).sum();
        let pf = table.pfaffian_deleting(&cols);
        if pf.is_zero() {
            continue;
        }
        let delta = b.delta(&cols, Some(j))?;
        terms.push((if weight % 2 == 1 { -1 } else { 1 }, pf, delta));
    }
    let mut out = Vec::new();
    for exps in monomials_of_degree(d, (n - d).div_ceil(2) as u32) {
        if exps[j] == 0 {
            continue;
        }
        let mut acc = Polynomial::zero(&rings.t);
        for (sign, pf, delta) in &terms {
            let c = contraction(pf, &exps);
            if c != 0 {
                acc = &acc + &delta.scale(sign * c);
            }
        }
        if !acc.is_zero() {
            out.push(acc);
        }
    }
    Ok(out)
}
