//! Hilbert series of monomial quotients by pivot recursion.

use serde::{Deserialize, Serialize};

use crate::polyring::Monomial;

/// Hilbert series `N(z) / (1 - z)^dim` of a standard graded quotient, with
/// `N(1) != 0`; the multiplicity is `N(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    pub dim: usize,
    pub multiplicity: i64,
}

pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

fn poly_add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.packed()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator of the Hilbert series of `k[x_1..x_n]/(gens)` over `(1-z)^n`.
pub fn k_polynomial(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    kpoly_rec(minimalize(gens.to_vec()), nvars)
}

fn kpoly_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // pairwise coprime generators: product of (1 - z^deg)
    let mut seen = 0u32;
    let mut coprime = true;
    for g in &gens {
        let s = g.support();
        if s & seen != 0 {
            coprime = false;
            break;
        }
        seen |= s;
    }
    if coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            poly_mul(&acc, &f)
        });
    }
    // pivot: the variable occurring in the most non-pure-power generators
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        let s = g.support();
        if s.count_ones() > 1 {
            for (v, c) in counts.iter_mut().enumerate() {
                if s >> v & 1 == 1 {
                    *c += 1;
                }
            }
        }
    }
    let var = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("nvars > 0");
    let exp = gens
        .iter()
        .filter(|g| g.support().count_ones() > 1)
        .map(|g| g.exponent(var))
        .filter(|&e| e > 0)
        .min()
        .expect("pivot variable occurs");
    let pivot = Monomial::variable(var, exp).expect("bounded exponent");

    let mut with_pivot: Vec<Monomial> = gens.iter().filter(|g| !pivot.divides(g)).copied().collect();
    with_pivot.push(pivot);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&pivot)).collect();

    let mut k = kpoly_rec(minimalize(with_pivot), nvars);
    let kc = kpoly_rec(minimalize(colon), nvars);
    poly_add_shifted(&mut k, &kc, exp as usize);
    k
}

impl HilbertData {
    /// Hilbert data of `k[x_1..x_n]/(gens)`. Returns `None` for the unit ideal.
    pub fn from_monomials(gens: &[Monomial], nvars: usize) -> Option<Self> {
        let mut num = k_polynomial(gens, nvars);
        while num.len() > 1 && num.last() == Some(&0) {
            num.pop();
        }
        if num.iter().all(|&c| c == 0) {
            return None;
        }
        let mut dim = nvars;
        // divide by (1 - z) while N(1) = 0
        while num.iter().sum::<i64>() == 0 {
            let mut q = vec![0i64; num.len() - 1];
            let mut carry = 0i64;
            for i in 0..q.len() {
                carry += num[i];
                q[i] = carry;
            }
            num = q;
            dim -= 1;
        }
        let multiplicity = num.iter().sum();
        Some(Self { numerator: num, dim, multiplicity })
    }

    /// Dimension of the degree-`k` component.
    pub fn coefficient(&self, k: usize) -> i128 {
        self.numerator
            .iter()
            .enumerate()
            .filter(|(i, _)| *i <= k)
            .map(|(i, &c)| {
                let rest = (k - i) as i64;
                let count = if self.dim == 0 {
                    (rest == 0) as i128
                } else {
                    binomial(rest + self.dim as i64 - 1, self.dim as i64 - 1)
                };
                c as i128 * count
            })
            .sum()
    }

    /// Coefficients of degrees `0..=up_to`.
    pub fn series(&self, up_to: usize) -> Vec<i128> {
        (0..=up_to).map(|k| self.coefficient(k)).collect()
    }
}
