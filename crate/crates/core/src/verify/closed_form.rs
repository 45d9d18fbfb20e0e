//! Closed-form Hilbert series of `T/(I_d(B) + C(φ))`, evaluated as a Laurent
//! series so that negative exponents in the formula can be tracked.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::groebner::binomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormSeries {
    /// Laurent numerator over `(1-z)^d`, keyed by exponent.
    pub numerator: BTreeMap<i64, i128>,
    /// Laurent polynomial added after the rational part.
    pub correction: BTreeMap<i64, i128>,
    /// Coefficients in degrees `0..=up_to`.
    pub series: Vec<i128>,
    /// Nonzero coefficients in negative degrees (empty when the formula is a power series).
    pub negative_terms: BTreeMap<i64, i128>,
    /// Numerator at `z = 1`.
    pub multiplicity: i128,
}

fn ceil_half(a: i64) -> i64 {
    a.div_euclid(2) + (a.rem_euclid(2) != 0) as i64
}

/// The two-sum rational expression over `(1-z)^d` plus the correction sum,
/// whose index `j` runs over `0 <= j <= ⌈(n-d-3)/2⌉`.
pub fn fiber_hilbert_closed_form(d: usize, n: usize, up_to: usize) -> ClosedFormSeries {
    let (di, ni) = (d as i64, n as i64);
    let mut numerator: BTreeMap<i64, i128> = BTreeMap::new();
    for l in 0..=di - 2 {
        *numerator.entry(l).or_default() += binomial(l + ni - di - 1, ni - di - 1);
    }
    for l in 0..=ni - di - 2 {
        let sign = if (l + di + 1) % 2 == 0 { 1 } else { -1 };
        *numerator.entry(l + 2 * di - ni).or_default() += sign * binomial(l + di - 1, di - 1);
    }
    let mut correction: BTreeMap<i64, i128> = BTreeMap::new();
    let top = ceil_half(ni - di - 3);
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    for j in 0..=top {
        *correction.entry(2 * j + 2 * di - ni).or_default() += sign * binomial(j + di - 1, di - 1);
    }
    numerator.retain(|_, c| *c != 0);
    correction.retain(|_, c| *c != 0);

    let lowest = numerator.keys().chain(correction.keys()).copied().min().unwrap_or(0).min(0);
    let coefficient = |k: i64| -> i128 {
        let rational: i128 = numerator
            .iter()
            .filter(|(&e, _)| e <= k)
            .map(|(&e, &c)| c * binomial(k - e + di - 1, di - 1))
            .sum();
        rational + correction.get(&k).copied().unwrap_or(0)
    };
    let negative_terms = (lowest..0).map(|k| (k, coefficient(k))).filter(|(_, c)| *c != 0).collect();
    let series = (0..=up_to as i64).map(coefficient).collect();
    let multiplicity = numerator.values().sum();
    ClosedFormSeries { numerator, correction, series, negative_terms, multiplicity }
}
