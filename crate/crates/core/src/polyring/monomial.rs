//! Packed exponent vectors.
//!
//! A monomial in at most [`MAX_VARS`] variables is stored in a single `u128`,
//! one byte per variable, variable 0 in the most significant byte. Exponents
//! are capped at [`MAX_EXPONENT`] so that the high bit of every byte stays
//! clear; this makes divisibility, multiplication and support tests a handful
//! of word operations.

use std::fmt;

pub const MAX_VARS: usize = 16;
pub const MAX_EXPONENT: u32 = 127;

const HIGH: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;
const LOW7: u128 = 0x7f7f_7f7f_7f7f_7f7f_7f7f_7f7f_7f7f_7f7f;

#[inline]
pub(crate) const fn shift_of(var: usize) -> u32 {
    8 * (15 - var as u32)
}

/// Byte mask selecting the given variables.
pub fn var_mask(vars: impl IntoIterator<Item = usize>) -> u128 {
    vars.into_iter().fold(0u128, |m, v| m | (0xffu128 << shift_of(v)))
}

#[inline]
pub(crate) fn byte_sum(x: u128) -> u32 {
    let lanes = (x & 0x00ff_00ff_00ff_00ff_00ff_00ff_00ff_00ff) + ((x >> 8) & 0x00ff_00ff_00ff_00ff_00ff_00ff_00ff_00ff);
    let lo = lanes as u64;
    let hi = (lanes >> 64) as u64;
    let fold = |v: u64| (v.wrapping_mul(0x0001_0001_0001_0001) >> 48) as u32;
    fold(lo) + fold(hi)
}

/// An exponent vector with a cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    packed: u128,
    degree: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { packed: 0, degree: 0 };

    /// Builds a monomial from an exponent slice. Returns `None` if there are
    /// too many variables or an exponent exceeds [`MAX_EXPONENT`].
    pub fn from_exponents(exps: &[u32]) -> Option<Self> {
        if exps.len() > MAX_VARS {
            return None;
        }
        let mut packed = 0u128;
        let mut degree = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXPONENT {
                return None;
            }
            packed |= (e as u128) << shift_of(i);
            degree += e;
        }
        Some(Self { packed, degree })
    }

    pub fn variable(var: usize, exp: u32) -> Option<Self> {
        if var >= MAX_VARS || exp > MAX_EXPONENT {
            return None;
        }
        Some(Self { packed: (exp as u128) << shift_of(var), degree: exp })
    }

    #[inline]
    pub(crate) fn from_packed(packed: u128) -> Self {
        Self { packed, degree: byte_sum(packed) }
    }

    #[inline]
    pub fn packed(&self) -> u128 {
        self.packed
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u32 {
        ((self.packed >> shift_of(var)) & 0xff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.packed == 0
    }

    /// Degree restricted to the variables selected by `mask`.
    #[inline]
    pub fn masked_degree(&self, mask: u128) -> u32 {
        byte_sum(self.packed & mask)
    }

    /// Product, or `None` on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        let s = self.packed + other.packed;
        if s & HIGH != 0 {
            return None;
        }
        Some(Monomial { packed: s, degree: self.degree + other.degree })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        ((other.packed | HIGH) - self.packed) & HIGH == HIGH
    }

    /// `self / other`; the caller guarantees `other` divides `self`.
    #[inline]
    pub fn div_unchecked(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial { packed: self.packed - other.packed, degree: self.degree - other.degree }
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.div_unchecked(other))
    }

    /// Bytes with a nonzero exponent get their high bit set.
    #[inline]
    fn nonzero_bytes(&self) -> u128 {
        (self.packed + LOW7) & HIGH
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.nonzero_bytes() & other.nonzero_bytes() == 0
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        // per-byte max: bytes where self >= other take self
        let ge = ((self.packed | HIGH) - other.packed) & HIGH;
        let sel = (ge >> 7) * 0xff;
        Monomial::from_packed((self.packed & sel) | (other.packed & !sel))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let ge = ((self.packed | HIGH) - other.packed) & HIGH;
        let sel = (ge >> 7) * 0xff;
        Monomial::from_packed((other.packed & sel) | (self.packed & !sel))
    }

    /// `self / gcd(self, other)`: exponents saturate at zero.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        self.div_unchecked(&self.gcd(other))
    }

    /// Bitmask of variables with positive exponent (bit `i` for variable `i`).
    pub fn support(&self) -> u32 {
        let nz = self.nonzero_bytes();
        let mut s = 0u32;
        for i in 0..MAX_VARS {
            if (nz >> (shift_of(i) + 7)) & 1 == 1 {
                s |= 1 << i;
            }
        }
        s
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exponents(MAX_VARS))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn swar_operations_match_scalar() {
        let a = m(&[3, 0, 2, 7]);
        let b = m(&[1, 0, 2, 0]);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.div_unchecked(&b), m(&[2, 0, 0, 7]));
        assert_eq!(a.lcm(&m(&[4, 1, 0, 0])), m(&[4, 1, 2, 7]));
        assert_eq!(a.gcd(&m(&[4, 1, 0, 3])), m(&[3, 0, 0, 3]));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 5])));
        assert!(!m(&[1, 1]).is_coprime(&m(&[0, 5])));
        assert_eq!(a.support(), 0b1101);
        assert_eq!(a.masked_degree(var_mask([0, 3])), 10);
        assert_eq!(a.degree(), 12);
    }

    #[test]
    fn overflow_is_detected() {
        let a = Monomial::variable(2, 100).unwrap();
        assert!(a.mul(&a).is_none());
        assert!(Monomial::from_exponents(&[128]).is_none());
        assert!(Monomial::from_exponents(&[0; 17]).is_none());
    }

    #[test]
    fn byte_sum_wide() {
        let e: Vec<u32> = (0..16).map(|i| 120 + (i % 7)).collect();
        let mono = m(&e);
        assert_eq!(mono.degree(), e.iter().sum::<u32>());
        assert_eq!(byte_sum(mono.packed()), mono.degree());
    }
}
