use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::ring::{same_ring, Ring};
use super::RingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coef: u32,
    pub mono: Monomial,
}

/// Sparse polynomial: nonzero terms, strictly descending under `order`.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    order: MonomialOrder,
    terms: Vec<Term>,
}

/// `a - c*m*b` on sorted term lists, skipping the first `skip_a` terms of `a`.
pub(crate) fn sub_scaled_shifted(
    a: &[Term],
    c: u32,
    m: &Monomial,
    b: &[Term],
    order: MonomialOrder,
    field: PrimeField,
) -> Vec<Term> {
    try_sub_scaled_shifted(a, c, m, b, order, field).expect("exponent overflow")
}

/// As [`sub_scaled_shifted`], but `None` when some `m*b[j]` exceeds [`MAX_EXPONENT`](super::MAX_EXPONENT).
pub(crate) fn try_sub_scaled_shifted(
    a: &[Term],
    c: u32,
    m: &Monomial,
    b: &[Term],
    order: MonomialOrder,
    field: PrimeField,
) -> Option<Vec<Term>> {
    let neg_c = field.neg(c);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |t: &Term| -> Option<Term> { Some(Term { coef: field.mul(neg_c, t.coef), mono: t.mono.mul(m)? }) };
    let mut next_b = match b.first() {
        Some(t) => Some(shifted(t)?),
        None => None,
    };
    while i < a.len() {
        match next_b {
            None => {
                out.extend_from_slice(&a[i..]);
                return Some(out);
            }
            Some(tb) => match order.cmp(&a[i].mono, &tb.mono) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(tb);
                    j += 1;
                    next_b = b.get(j).map(shifted).map_or(Some(None), |t| t.map(Some))?;
                }
                Ordering::Equal => {
                    let s = field.add(a[i].coef, tb.coef);
                    if s != 0 {
                        out.push(Term { coef: s, mono: tb.mono });
                    }
                    i += 1;
                    j += 1;
                    next_b = b.get(j).map(shifted).map_or(Some(None), |t| t.map(Some))?;
                }
            },
        }
    }
    if let Some(tb) = next_b {
        out.push(tb);
        for t in &b[j + 1..] {
            out.push(shifted(t)?);
        }
    }
    Some(out)
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self { ring: ring.clone(), order: MonomialOrder::default(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let coef = ring.field().from_i64(c);
        let terms = if coef == 0 { Vec::new() } else { vec![Term { coef, mono: Monomial::ONE }] };
        Self { ring: ring.clone(), order: MonomialOrder::default(), terms }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn variable(ring: &Ring, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index {index} out of range");
        let mono = Monomial::variable(index, 1).expect("index below MAX_VARS");
        Self { ring: ring.clone(), order: MonomialOrder::default(), terms: vec![Term { coef: 1, mono }] }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self, RingError> {
        let idx = ring.variable_index(name).ok_or_else(|| RingError::UnknownVariable(name.to_string()))?;
        Ok(Self::variable(ring, idx))
    }

    pub fn monomial(ring: &Ring, coef: i64, mono: Monomial) -> Self {
        Self::from_terms(ring, MonomialOrder::default(), vec![(ring.field().from_i64(coef), mono)])
    }

    /// Normalizes arbitrary (coefficient, monomial) pairs: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Ring, order: MonomialOrder, raw: Vec<(u32, Monomial)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(raw.len());
        for (c, m) in raw {
            let c = c % field.characteristic();
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c);
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|&(_, c)| c != 0).map(|(mono, coef)| Term { coef, mono }).collect();
        terms.sort_unstable_by(|a, b| order.cmp(&b.mono, &a.mono));
        Self { ring: ring.clone(), order, terms }
    }

    /// Wraps an already normalized term list.
    pub(crate) fn from_sorted_terms(ring: &Ring, order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.coef != 0));
        Self { ring: ring.clone(), order, terms }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].coef == 1 && self.terms[0].mono.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<Term> {
        self.terms.first().copied()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.coef)
    }

    /// Maximum total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn coefficient(&self, mono: &Monomial) -> u32 {
        self.terms.iter().find(|t| t.mono == *mono).map_or(0, |t| t.coef)
    }

    /// Same polynomial, terms re-sorted under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| order.cmp(&b.mono, &a.mono));
        Self { ring: self.ring.clone(), order, terms }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), RingError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    fn aligned<'a>(&self, other: &'a Polynomial) -> std::borrow::Cow<'a, Polynomial> {
        if other.order == self.order {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.with_order(self.order))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_ring(other)?;
        let other = self.aligned(other);
        let field = self.ring.field();
        let neg_one = field.neg(1);
        // a + b == a - (-1)*1*b
        let terms = sub_scaled_shifted(&self.terms, neg_one, &Monomial::ONE, &other.terms, self.order, field);
        Ok(Self { ring: self.ring.clone(), order: self.order, terms })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_ring(other)?;
        let other = self.aligned(other);
        let terms = sub_scaled_shifted(&self.terms, 1, &Monomial::ONE, &other.terms, self.order, self.ring.field());
        Ok(Self { ring: self.ring.clone(), order: self.order, terms })
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial { ring: self.ring.clone(), order: self.order, terms: Vec::new() });
        }
        let field = self.ring.field();
        if other.terms.len() == 1 {
            let t = other.terms[0];
            return self.mul_term(t.coef, &t.mono);
        }
        if self.terms.len() == 1 {
            let t = self.terms[0];
            return Ok(other.mul_term(t.coef, &t.mono)?.with_order(self.order));
        }
        let mut acc: HashMap<u128, u32> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mono.mul(&b.mono).ok_or(RingError::ExponentOverflow)?;
                let e = acc.entry(m.packed()).or_insert(0);
                *e = field.add(*e, field.mul(a.coef, b.coef));
            }
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(p, coef)| Term { coef, mono: Monomial::from_packed(p) })
            .collect();
        let order = self.order;
        terms.sort_unstable_by(|a, b| order.cmp(&b.mono, &a.mono));
        Ok(Self { ring: self.ring.clone(), order, terms })
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: u32, m: &Monomial) -> Result<Polynomial, RingError> {
        let field = self.ring.field();
        let c = c % field.characteristic();
        if c == 0 {
            return Ok(Polynomial { ring: self.ring.clone(), order: self.order, terms: Vec::new() });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term { coef: field.mul(c, t.coef), mono: t.mono.mul(m).ok_or(RingError::ExponentOverflow)? }))
            .collect::<Result<Vec<_>, RingError>>()?;
        Ok(Self { ring: self.ring.clone(), order: self.order, terms })
    }

    pub fn scale(&self, c: i64) -> Polynomial {
        let c = self.ring.field().from_i64(c);
        self.mul_term(c, &Monomial::ONE).expect("degree unchanged")
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => {
                let inv = self.ring.field().inv(c);
                self.mul_term(inv, &Monomial::ONE).expect("degree unchanged")
            }
        }
    }

    /// The quotient `r` with `r * q == self`, or `NotDivisible`.
    pub fn exact_div(&self, q: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_ring(q)?;
        if q.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let q = self.aligned(q);
        let field = self.ring.field();
        let lt = q.terms[0];
        let inv = field.inv(lt.coef);
        let mut rem = self.terms.clone();
        let mut quot = Vec::new();
        while let Some(head) = rem.first().copied() {
            let m = head.mono.checked_div(&lt.mono).ok_or(RingError::NotDivisible)?;
            let c = field.mul(head.coef, inv);
            quot.push(Term { coef: c, mono: m });
            rem = sub_scaled_shifted(&rem, c, &m, &q.terms, self.order, field);
        }
        Ok(Self { ring: self.ring.clone(), order: self.order, terms: quot })
    }

    /// Common bidegree of all terms; `None` if the terms disagree or the ring
    /// carries no bigrading. The zero polynomial reports `(0, 0)`.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        if !self.ring.is_bigraded() {
            return None;
        }
        let mut it = self.terms.iter().map(|t| self.ring.bidegree(&t.mono));
        let first = match it.next() {
            None => return Some((0, 0)),
            Some(b) => b,
        };
        it.all(|b| b == first).then_some(first)
    }

    /// Homogeneous for the standard grading.
    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].mono.degree() == w[1].mono.degree())
    }

    /// Regroups terms by their monomial in the variables *outside* the block
    /// `coefficient_block`, returning for each such monomial the coefficient
    /// polynomial (in the variables of the block). Keys are listed in
    /// descending order; the zero polynomial yields an empty list.
    pub fn content_in_block(&self, coefficient_block: &str) -> Result<Vec<(Monomial, Polynomial)>, RingError> {
        let mask = self
            .ring
            .block_mask(coefficient_block)
            .ok_or_else(|| RingError::UnknownBlock(coefficient_block.to_string()))?;
        let mut groups: Vec<(Monomial, Vec<Term>)> = Vec::new();
        let mut index: HashMap<u128, usize> = HashMap::new();
        for t in &self.terms {
            let key = Monomial::from_packed(t.mono.packed() & !mask);
            let coef_mono = Monomial::from_packed(t.mono.packed() & mask);
            let slot = *index.entry(key.packed()).or_insert_with(|| {
                groups.push((key, Vec::new()));
                groups.len() - 1
            });
            groups[slot].1.push(Term { coef: t.coef, mono: coef_mono });
        }
        let order = self.order;
        let mut out: Vec<(Monomial, Polynomial)> = groups
            .into_iter()
            .map(|(k, ts)| {
                let mut ts = ts;
                ts.sort_unstable_by(|a, b| order.cmp(&b.mono, &a.mono));
                (k, Polynomial { ring: self.ring.clone(), order, terms: ts })
            })
            .collect();
        out.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(out)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn map_to_ring(&self, target: &Ring) -> Result<Polynomial, RingError> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        if self.ring.characteristic() != target.characteristic() {
            return Err(RingError::RingMismatch);
        }
        let n = self.ring.nvars();
        let map: Vec<Option<usize>> = self.ring.variable_names().iter().map(|v| target.variable_index(v)).collect();
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, slot) in map.iter().enumerate().take(n) {
                let e = t.mono.exponent(i);
                if e > 0 {
                    let j = slot.ok_or_else(|| RingError::UnknownVariable(self.ring.variable_names()[i].clone()))?;
                    exps[j] = e;
                }
            }
            raw.push((t.coef, Monomial::from_exponents(&exps).expect("exponents already bounded")));
        }
        Ok(Polynomial::from_terms(target, MonomialOrder::default(), raw))
    }

    /// Indices of variables occurring in the polynomial.
    pub fn support_mask(&self) -> u32 {
        self.terms.iter().fold(0, |s, t| s | t.mono.support())
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !same_ring(&self.ring, &other.ring) {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`Polynomial::checked_add`] to handle it.
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1)
    }
}
