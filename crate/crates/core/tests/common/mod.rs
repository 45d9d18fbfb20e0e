//! Oracles shared by the integration tests. Each one recomputes a quantity
//! by a textbook method that shares no code with the library routine it checks.

#![allow(dead_code)]

use gorenstein_rees::pfaffian::PolyMatrix;
use gorenstein_rees::polyring::{Monomial, Polynomial, Ring, RingDescriptor, VariableBlock};

pub const P: u64 = 32003;

pub fn ring(nvars: usize) -> Ring {
    RingDescriptor::new(P, vec![VariableBlock::indexed("y", "y", nvars, (1, 0))]).unwrap()
}

/// Polynomial from `(coefficient, exponents)` pairs.
pub fn poly(ring: &Ring, terms: &[(i64, Vec<u32>)]) -> Polynomial {
    let mut acc = Polynomial::zero(ring);
    for (c, exps) in terms {
        let m = Monomial::from_exponents(exps).unwrap();
        acc = &acc + &Polynomial::monomial(ring, *c, m);
    }
    acc
}

/// Determinant as a signed sum over all permutations.
pub fn leibniz_det(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Polynomial::zero(ring);
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = Polynomial::one(ring);
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &m[i][j];
        }
        total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Pfaffian as a sum over perfect matchings, each signed by its crossing number.
pub fn matching_pfaffian(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n % 2 == 1 {
        return Polynomial::zero(ring);
    }
    let mut total = Polynomial::zero(ring);
    let mut pairs = Vec::new();
    let mut used = vec![false; n];
    matchings(n, &mut used, &mut pairs, &mut |pairs| {
        let crossings = pairs
            .iter()
            .flat_map(|&(a, b)| pairs.iter().map(move |&(c, e)| (a, b, c, e)))
            .filter(|&(a, b, c, e)| a < c && c < b && b < e)
            .count();
        let mut term = Polynomial::one(ring);
        for &(a, b) in pairs {
            term = &term * &m[a][b];
        }
        total = if crossings % 2 == 0 { &total + &term } else { &total - &term };
    });
    total
}

fn matchings(n: usize, used: &mut [bool], pairs: &mut Vec<(usize, usize)>, visit: &mut dyn FnMut(&[(usize, usize)])) {
    let Some(a) = (0..n).find(|&i| !used[i]) else {
        visit(pairs);
        return;
    };
    used[a] = true;
    for b in a + 1..n {
        if !used[b] {
            used[b] = true;
            pairs.push((a, b));
            matchings(n, used, pairs, visit);
            pairs.pop();
            used[b] = false;
        }
    }
    used[a] = false;
}

/// Alternating matrix whose upper triangle is `upper` (row-major, `n(n-1)/2` entries).
pub fn alternating(ring: &Ring, n: usize, upper: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    let mut m = vec![vec![Polynomial::zero(ring); n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[i][j] = upper[k].clone();
            m[j][i] = -&upper[k];
            k += 1;
        }
    }
    m
}

pub fn to_matrix(ring: &Ring, m: &[Vec<Polynomial>]) -> PolyMatrix {
    let n = m.len();
    PolyMatrix::new(ring, n, n, m.iter().flatten().cloned().collect()).unwrap()
}

/// `C(n, k)` by Pascal's rule.
pub fn choose(n: i64, k: i64) -> i128 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let mut row = vec![1i128];
    for _ in 0..n {
        let mut next = vec![1i128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

/// Number of monomials of degree `deg` in `nvars` variables not divisible by any of `leads`.
pub fn standard_monomials(nvars: usize, deg: u32, leads: &[Monomial]) -> usize {
    fn rec(var: usize, left: u32, exps: &mut Vec<u32>, nvars: usize, leads: &[Monomial], count: &mut usize) {
        if var + 1 == nvars {
            exps.push(left);
            let m = Monomial::from_exponents(exps).unwrap();
            if !leads.iter().any(|l| l.divides(&m)) {
                *count += 1;
            }
            exps.pop();
            return;
        }
        for e in 0..=left {
            exps.push(e);
            rec(var + 1, left - e, exps, nvars, leads, count);
            exps.pop();
        }
    }
    let mut count = 0;
    rec(0, deg, &mut Vec::new(), nvars, leads, &mut count);
    count
}
