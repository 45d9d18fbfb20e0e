//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller criteria.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use crate::polyring::{try_sub_scaled_shifted, Monomial, MonomialOrder, Polynomial, PrimeField, Ring, Term};

use super::{Budget, GbError};

static POSTHOC_CHECKS: AtomicBool = AtomicBool::new(cfg!(test));
static POSTHOC_COUNT: AtomicU64 = AtomicU64::new(0);

/// Turns the post-hoc Buchberger criterion check on every computed basis on or off.
/// A basis failing the check makes the computation panic.
pub fn set_posthoc_checks(on: bool) {
    POSTHOC_CHECKS.store(on, AtomicOrdering::SeqCst);
}

pub fn posthoc_checks_enabled() -> bool {
    POSTHOC_CHECKS.load(AtomicOrdering::SeqCst)
}

/// Number of bases that passed the post-hoc check in this process.
pub fn posthoc_checks_performed() -> u64 {
    POSTHOC_COUNT.load(AtomicOrdering::SeqCst)
}

struct Element {
    terms: Vec<Term>,
    sugar: u32,
}

impl Element {
    #[inline]
    fn lm(&self) -> Monomial {
        self.terms[0].mono
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Statistics of one run, mostly for diagnostics.
#[derive(Clone, Copy, Debug, Default)]
pub struct GbStats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub basis_size: usize,
}

struct Engine<'a> {
    ring: &'a Ring,
    order: MonomialOrder,
    field: PrimeField,
    elements: Vec<Element>,
    /// Active elements: (leading monomial, index into `elements`).
    reducers: Vec<(Monomial, usize)>,
    pairs: Vec<Pair>,
    budget: Budget,
    stats: GbStats,
    basis_terms: u64,
}

impl<'a> Engine<'a> {
    fn new(ring: &'a Ring, order: MonomialOrder, budget: Budget) -> Self {
        Self {
            ring,
            order,
            field: ring.field(),
            elements: Vec::new(),
            reducers: Vec::new(),
            pairs: Vec::new(),
            budget,
            stats: GbStats::default(),
            basis_terms: 0,
        }
    }

    fn sugar_of(&self, terms: &[Term]) -> u32 {
        terms.iter().map(|t| self.ring.weighted_degree(&t.mono)).max().unwrap_or(0)
    }

    #[inline]
    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        self.reducers.iter().find(|(lm, _)| lm.divides(m)).map(|&(_, idx)| idx)
    }

    /// Full reduction of `p` modulo the active elements. Returns the remainder and its sugar.
    fn reduce(&self, mut p: Vec<Term>, mut sugar: u32) -> Result<(Vec<Term>, u32), GbError> {
        let mut out: Vec<Term> = Vec::new();
        let mut head = 0;
        while head < p.len() {
            let t = p[head];
            match self.find_reducer(&t.mono) {
                Some(idx) => {
                    let r = &self.elements[idx];
                    let m = t.mono.div_unchecked(&r.lm());
                    p = try_sub_scaled_shifted(&p[head + 1..], t.coef, &m, &r.terms[1..], self.order, self.field)
                        .ok_or(GbError::ExponentOverflow)?;
                    head = 0;
                    sugar = sugar.max(self.ring.weighted_degree(&m) + r.sugar);
                    if p.len() as u64 > self.budget.max_terms {
                        return Err(self.timeout());
                    }
                }
                None => {
                    out.push(t);
                    head += 1;
                }
            }
        }
        Ok((out, sugar))
    }

    fn timeout(&self) -> GbError {
        GbError::Timeout { pairs: self.stats.pairs_reduced, terms: self.basis_terms }
    }

    fn make_monic(&self, terms: &mut [Term]) {
        let lc = terms[0].coef;
        if lc != 1 {
            let inv = self.field.inv(lc);
            for t in terms.iter_mut() {
                t.coef = self.field.mul(t.coef, inv);
            }
        }
    }

    fn spoly(&self, pair: &Pair) -> Result<Vec<Term>, GbError> {
        let f = &self.elements[pair.i];
        let g = &self.elements[pair.j];
        let mf = pair.lcm.div_unchecked(&f.lm());
        let mg = pair.lcm.div_unchecked(&g.lm());
        let a = f.terms[1..]
            .iter()
            .map(|t| Some(Term { coef: t.coef, mono: t.mono.mul(&mf)? }))
            .collect::<Option<Vec<Term>>>()
            .ok_or(GbError::ExponentOverflow)?;
        try_sub_scaled_shifted(&a, 1, &mg, &g.terms[1..], self.order, self.field).ok_or(GbError::ExponentOverflow)
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let (a, b) = (&self.elements[i], &self.elements[j]);
        let sa = a.sugar + self.ring.weighted_degree(&lcm.div_unchecked(&a.lm()));
        let sb = b.sugar + self.ring.weighted_degree(&lcm.div_unchecked(&b.lm()));
        sa.max(sb)
    }

    /// Inserts a new monic, fully reduced element and updates the pair set.
    fn insert(&mut self, terms: Vec<Term>, sugar: u32) -> Result<(), GbError> {
        if terms[0].mono.is_one() {
            // unit ideal: nothing else matters
            self.elements.push(Element { terms, sugar });
            self.reducers = vec![(Monomial::ONE, self.elements.len() - 1)];
            self.pairs.clear();
            return Ok(());
        }
        self.basis_terms += terms.len() as u64;
        if self.basis_terms > self.budget.max_terms {
            return Err(self.timeout());
        }
        let h = self.elements.len();
        self.elements.push(Element { terms, sugar });
        let h_lm = self.elements[h].lm();

        let cands: Vec<(usize, Monomial, bool)> = self
            .reducers
            .iter()
            .map(|&(lm, g)| (g, h_lm.lcm(&lm), h_lm.is_coprime(&lm)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::with_capacity(cands.len());
        for k in 0..cands.len() {
            let (g, l, coprime) = cands[k];
            let redundant = !coprime
                && (cands[k + 1..].iter().any(|(_, l2, _)| l2.divides(&l)) || kept.iter().any(|(_, l2, _)| l2.divides(&l)));
            if !redundant {
                kept.push((g, l, coprime));
            }
        }

        let elements = &self.elements;
        self.pairs.retain(|p| {
            !(h_lm.divides(&p.lcm)
                && h_lm.lcm(&elements[p.i].lm()) != p.lcm
                && h_lm.lcm(&elements[p.j].lm()) != p.lcm)
        });
        for (g, l, coprime) in kept {
            if coprime {
                continue;
            }
            let sugar = self.pair_sugar(g, h, &l);
            self.pairs.push(Pair { i: g, j: h, lcm: l, sugar });
        }
        self.reducers.retain(|(lm, _)| !h_lm.divides(lm));
        self.reducers.push((h_lm, h));

        // smallest (sugar, lcm) last so the next pair pops off the end
        let order = self.order;
        self.pairs.sort_by(|a, b| {
            b.sugar
                .cmp(&a.sugar)
                .then_with(|| order.cmp(&b.lcm, &a.lcm))
                .then_with(|| (b.j, b.i).cmp(&(a.j, a.i)))
        });
        Ok(())
    }

    fn add_generator(&mut self, terms: Vec<Term>) -> Result<(), GbError> {
        let sugar = self.sugar_of(&terms);
        let (mut r, sugar) = self.reduce(terms, sugar)?;
        if !r.is_empty() {
            self.make_monic(&mut r);
            self.insert(r, sugar)?;
        }
        Ok(())
    }

    fn run(&mut self) -> Result<(), GbError> {
        while let Some(pair) = self.pairs.pop() {
            self.stats.pairs_reduced += 1;
            if self.stats.pairs_reduced > self.budget.max_pairs {
                return Err(self.timeout());
            }
            let s = self.spoly(&pair)?;
            let (mut r, sugar) = self.reduce(s, pair.sugar)?;
            if r.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            self.make_monic(&mut r);
            self.insert(r, sugar)?;
        }
        Ok(())
    }

    /// Minimal, tail-reduced, monic basis sorted by ascending leading monomial.
    fn reduced_basis(&self) -> Result<Vec<Vec<Term>>, GbError> {
        let order = self.order;
        let mut active: Vec<usize> = self.reducers.iter().map(|&(_, i)| i).collect();
        active.sort_by(|&a, &b| order.cmp(&self.elements[a].lm(), &self.elements[b].lm()));
        let mut minimal: Vec<usize> = Vec::with_capacity(active.len());
        for idx in active {
            let lm = self.elements[idx].lm();
            if !minimal.iter().any(|&k| self.elements[k].lm().divides(&lm)) {
                minimal.push(idx);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for &idx in &minimal {
            let e = &self.elements[idx];
            let (tail, _) = self.reduce(e.terms[1..].to_vec(), e.sugar)?;
            let mut terms = Vec::with_capacity(tail.len() + 1);
            terms.push(e.terms[0]);
            terms.extend(tail);
            out.push(terms);
        }
        Ok(out)
    }
}

/// Computes the reduced Gröbner basis of `gens` under `order`.
///
/// The result is sorted by ascending leading monomial and is deterministic
/// for fixed input and order. The zero ideal yields an empty basis.
pub fn groebner_basis(
    ring: &Ring,
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: Budget,
) -> Result<(Vec<Polynomial>, GbStats), GbError> {
    let mut engine = Engine::new(ring, order, budget);
    let mut inputs: Vec<Vec<Term>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order).into_terms())
        .collect();
    inputs.sort_by(|a, b| {
        let da = engine.sugar_of(a);
        let db = engine.sugar_of(b);
        da.cmp(&db).then_with(|| order.cmp(&a[0].mono, &b[0].mono)).then_with(|| a.len().cmp(&b.len()))
    });
    for terms in inputs {
        engine.add_generator(terms)?;
        if engine.reducers.first().is_some_and(|(lm, _)| lm.is_one()) {
            break;
        }
    }
    engine.run()?;
    let basis = engine.reduced_basis()?;
    engine.stats.basis_size = basis.len();
    let polys: Vec<Polynomial> = basis.into_iter().map(|t| Polynomial::from_sorted_terms(ring, order, t)).collect();
    if posthoc_checks_enabled() {
        if let Some((i, j)) = first_nonzero_spair(ring, &polys, order)? {
            panic!("Buchberger criterion violated by basis elements {i} and {j} under {order:?}");
        }
        POSTHOC_COUNT.fetch_add(1, AtomicOrdering::SeqCst);
    }
    Ok((polys, engine.stats))
}

/// Remainder of `p` on full division by `basis` (which must be a Gröbner
/// basis under `order` for the remainder to be a normal form).
pub fn reduce_by(ring: &Ring, p: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Result<Polynomial, GbError> {
    let mut engine = Engine::new(ring, order, Budget::unlimited());
    for b in basis {
        let mut terms = b.with_order(order).into_terms();
        if terms.is_empty() {
            continue;
        }
        engine.make_monic(&mut terms);
        let lm = terms[0].mono;
        engine.elements.push(Element { terms, sugar: 0 });
        engine.reducers.push((lm, engine.elements.len() - 1));
    }
    let (r, _) = engine.reduce(p.with_order(order).into_terms(), 0)?;
    Ok(Polynomial::from_sorted_terms(ring, order, r))
}

/// Checks Buchberger's criterion: returns the first pair whose S-polynomial
/// does not reduce to zero, or `None` if `basis` is a Gröbner basis.
///
/// A pair `(i, j)` is skipped when its leading monomials are coprime, or when
/// some `k` has `lm_k | lcm_ij` with both `lcm_ik` and `lcm_kj` proper divisors
/// of `lcm_ij`; induction on `lcm` under divisibility keeps the skip sound.
pub fn first_nonzero_spair(
    ring: &Ring,
    basis: &[Polynomial],
    order: MonomialOrder,
) -> Result<Option<(usize, usize)>, GbError> {
    let mut engine = Engine::new(ring, order, Budget::unlimited());
    for b in basis {
        let mut terms = b.with_order(order).into_terms();
        if terms.is_empty() {
            continue;
        }
        engine.make_monic(&mut terms);
        let lm = terms[0].mono;
        engine.elements.push(Element { terms, sugar: 0 });
        engine.reducers.push((lm, engine.elements.len() - 1));
    }
    let n = engine.elements.len();
    for j in 0..n {
        for i in 0..j {
            let (a, b) = (engine.elements[i].lm(), engine.elements[j].lm());
            if a.is_coprime(&b) {
                continue;
            }
            let lcm = a.lcm(&b);
            let chained = (0..n).any(|k| {
                let c = engine.elements[k].lm();
                k != i && k != j && c.divides(&lcm) && a.lcm(&c) != lcm && c.lcm(&b) != lcm
            });
            if chained {
                continue;
            }
            let pair = Pair { i, j, lcm, sugar: 0 };
            let s = engine.spoly(&pair)?;
            let (r, _) = engine.reduce(s, 0)?;
            if !r.is_empty() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}
