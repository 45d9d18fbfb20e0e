use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::polyring::{same_ring, var_mask, MonomialOrder, Polynomial, Ring, RingError};

use super::buchberger::{groebner_basis, reduce_by};
use super::hilbert::HilbertData;
use super::{Budget, GbError};

/// Generators in a ring plus reduced Gröbner bases cached per monomial order.
pub struct IdealHandle {
    ring: Ring,
    generators: Vec<Polynomial>,
    budget: Budget,
    cache: RwLock<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            budget: self.budget,
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators.iter().map(|g| g.to_string())).finish()
    }
}

impl IdealHandle {
    /// Ideal generated by `generators` (zeros are dropped).
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self, GbError> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(RingError::RingMismatch.into());
            }
            if !g.is_zero() {
                gens.push(g.with_order(MonomialOrder::Grevlex));
            }
        }
        Ok(Self { ring: ring.clone(), generators: gens, budget: Budget::from_env(), cache: RwLock::new(HashMap::new()) })
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new()).expect("no generators")
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    fn derived(&self, generators: Vec<Polynomial>) -> Result<Self, GbError> {
        Ok(Self::new(&self.ring, generators)?.with_budget(self.budget))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// No nonzero generators.
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Reduced Gröbner basis under `order`, computed once and cached.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Arc<Vec<Polynomial>>, GbError> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(&order) {
            return Ok(gb.clone());
        }
        let (gb, _) = groebner_basis(&self.ring, &self.generators, order, self.budget)?;
        let gb = Arc::new(gb);
        self.cache.write().expect("cache lock").entry(order).or_insert_with(|| gb.clone());
        Ok(gb)
    }

    /// Grevlex reduced basis.
    pub fn basis(&self) -> Result<Arc<Vec<Polynomial>>, GbError> {
        self.groebner_basis(MonomialOrder::Grevlex)
    }

    fn seed_cache(&self, order: MonomialOrder, gb: Vec<Polynomial>) {
        self.cache.write().expect("cache lock").insert(order, Arc::new(gb));
    }

    pub fn normal_form(&self, p: &Polynomial, order: MonomialOrder) -> Result<Polynomial, GbError> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(RingError::RingMismatch.into());
        }
        let gb = self.groebner_basis(order)?;
        reduce_by(&self.ring, p, &gb, order)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GbError> {
        Ok(self.normal_form(p, MonomialOrder::Grevlex)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool, GbError> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First generator of `other` not in `self`, if any.
    pub fn first_non_member<'a>(&self, other: &'a IdealHandle) -> Result<Option<&'a Polynomial>, GbError> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    pub fn is_unit(&self) -> Result<bool, GbError> {
        Ok(self.basis()?.iter().any(|g| g.is_constant()))
    }

    /// Equality via reduced grevlex bases.
    pub fn equals(&self, other: &IdealHandle) -> Result<bool, GbError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(RingError::RingMismatch.into());
        }
        Ok(*self.basis()? == *other.basis()?)
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle, GbError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(RingError::RingMismatch.into());
        }
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        self.derived(gens)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle, GbError> {
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.checked_mul(b)?);
            }
        }
        self.derived(gens)
    }

    /// The extension or contraction of this ideal's generators into `target`,
    /// matching variables by name.
    pub fn map_to_ring(&self, target: &Ring) -> Result<IdealHandle, GbError> {
        let gens = self.generators.iter().map(|g| g.map_to_ring(target)).collect::<Result<Vec<_>, _>>()?;
        Ok(IdealHandle::new(target, gens)?.with_budget(self.budget))
    }

    /// `I ∩ k[remaining variables]`, returned in the same ring. Its generators
    /// form the reduced grevlex basis of the elimination ideal.
    pub fn eliminate(&self, vars: &[usize]) -> Result<IdealHandle, GbError> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let mask = var_mask(vars.iter().copied());
        let order = MonomialOrder::Elimination { block: mask };
        let gb = self.groebner_basis(order)?;
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| g.leading_monomial().is_some_and(|m| m.packed() & mask == 0))
            .map(|g| g.with_order(MonomialOrder::Grevlex))
            .collect();
        let out = self.derived(kept.clone())?;
        out.seed_cache(MonomialOrder::Grevlex, kept);
        Ok(out)
    }

    pub fn eliminate_block(&self, block: &str) -> Result<IdealHandle, GbError> {
        let vars = self.ring.block_variables(block).ok_or_else(|| RingError::UnknownBlock(block.to_string()))?;
        self.eliminate(&vars)
    }

    /// Extends to a ring with one fresh auxiliary variable, returning the
    /// ring, the variable, and this ideal's generators in it.
    fn lift_with_aux(&self) -> Result<(Ring, Polynomial, Vec<Polynomial>), GbError> {
        let (ring, w) = self.ring.with_auxiliary("w", 1)?;
        let gens = self.generators.iter().map(|g| g.map_to_ring(&ring)).collect::<Result<Vec<_>, _>>()?;
        Ok((ring.clone(), Polynomial::variable(&ring, w), gens))
    }

    fn eliminate_aux(&self, ring: &Ring, gens: Vec<Polynomial>) -> Result<IdealHandle, GbError> {
        let w = ring.nvars() - 1;
        let lifted = IdealHandle::new(ring, gens)?.with_budget(self.budget);
        let elim = lifted.eliminate(&[w])?;
        let back = elim.generators.iter().map(|g| g.map_to_ring(&self.ring)).collect::<Result<Vec<_>, _>>()?;
        let out = self.derived(back.clone())?;
        out.seed_cache(MonomialOrder::Grevlex, back);
        Ok(out)
    }

    /// `I ∩ J` via `w*I + (1-w)*J` with `w` eliminated.
    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle, GbError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(RingError::RingMismatch.into());
        }
        if self.is_zero() || other.is_zero() {
            return Ok(IdealHandle::zero(&self.ring).with_budget(self.budget));
        }
        let (ring, w, mine) = self.lift_with_aux()?;
        let one_minus_w = &Polynomial::one(&ring) - &w;
        let mut gens: Vec<Polynomial> = mine.iter().map(|g| &w * g).collect();
        for g in &other.generators {
            gens.push(&one_minus_w * &g.map_to_ring(&ring)?);
        }
        self.eliminate_aux(&ring, gens)
    }

    /// `I : f`, computed as `(I ∩ (f)) / f`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<IdealHandle, GbError> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(RingError::RingMismatch.into());
        }
        if f.is_zero() {
            return Ok(IdealHandle::unit(&self.ring).with_budget(self.budget));
        }
        let principal = self.derived(vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet.generators.iter().map(|g| g.exact_div(f)).collect::<Result<Vec<_>, _>>()?;
        self.derived(gens)
    }

    /// `I : J = ⋂_j (I : f_j)`.
    pub fn quotient(&self, other: &IdealHandle) -> Result<IdealHandle, GbError> {
        let mut acc: Option<IdealHandle> = None;
        for f in &other.generators {
            let q = self.quotient_by(f)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| IdealHandle::unit(&self.ring).with_budget(self.budget)))
    }

    /// `I : f^∞` via `I + (w*f - 1)` with `w` eliminated.
    pub fn saturate(&self, f: &Polynomial) -> Result<IdealHandle, GbError> {
        if f.is_zero() {
            return Err(GbError::ZeroPolynomial);
        }
        let (ring, w, mut gens) = self.lift_with_aux()?;
        gens.push(&(&w * &f.map_to_ring(&ring)?) - &Polynomial::one(&ring));
        self.eliminate_aux(&ring, gens)
    }

    /// `f ∈ √I`, by testing whether `I + (w*f - 1)` is the unit ideal.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool, GbError> {
        if f.is_zero() {
            return Ok(true);
        }
        let (ring, w, mut gens) = self.lift_with_aux()?;
        gens.push(&(&w * &f.map_to_ring(&ring)?) - &Polynomial::one(&ring));
        IdealHandle::new(&ring, gens)?.with_budget(self.budget).is_unit()
    }

    /// Krull dimension of the quotient and height of the ideal.
    pub fn dim_height(&self) -> Result<(usize, usize), GbError> {
        let gb = self.basis()?;
        if gb.iter().any(|g| g.is_constant()) {
            return Err(GbError::UnitIdeal);
        }
        let n = self.ring.nvars();
        let supports: Vec<u32> = gb.iter().map(|g| g.leading_monomial().expect("nonzero").support()).collect();
        let mut best = 0usize;
        for set in 0u32..(1u32 << n) {
            let size = set.count_ones() as usize;
            if size > best && supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Ok((best, n - best))
    }

    /// Hilbert series of the quotient (standard grading).
    pub fn hilbert(&self) -> Result<HilbertData, GbError> {
        if !self.is_homogeneous() {
            return Err(GbError::NotHomogeneous);
        }
        let gb = self.basis()?;
        let lms: Vec<_> = gb.iter().map(|g| g.leading_monomial().expect("nonzero")).collect();
        HilbertData::from_monomials(&lms, self.ring.nvars()).ok_or(GbError::UnitIdeal)
    }
}
