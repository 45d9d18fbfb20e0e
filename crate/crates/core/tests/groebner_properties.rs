mod common;

use common::*;
use gorenstein_rees::groebner::{
    first_nonzero_spair, groebner_basis, posthoc_checks_performed, set_posthoc_checks, Budget, GbError, IdealHandle,
};
use gorenstein_rees::polyring::{MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;

type RawPoly = Vec<(i64, Vec<u32>)>;

const NVARS: usize = 3;

fn raw_poly() -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((-4i64..=4, prop::collection::vec(0u32..=2, NVARS)), 1..=3)
}

fn raw_ideal() -> impl Strategy<Value = Vec<RawPoly>> {
    prop::collection::vec(raw_poly(), 1..=3)
}

fn budget() -> Budget {
    Budget { max_pairs: 20_000, max_terms: 2_000_000 }
}

fn ideal(r: &Ring, raw: &[RawPoly]) -> IdealHandle {
    IdealHandle::new(r, raw.iter().map(|p| poly(r, p)).collect()).unwrap().with_budget(budget())
}

/// Runs `f`, discarding cases that exhaust the budget.
fn within_budget<T>(f: impl FnOnce() -> Result<T, GbError>) -> Option<T> {
    match f() {
        Ok(v) => Some(v),
        Err(e) if e.is_timeout() => None,
        Err(e) => panic!("{e}"),
    }
}

fn free_of(p: &Polynomial, var: usize) -> bool {
    p.terms().iter().all(|t| t.mono.exponent(var) == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn bases_generate_the_ideal_and_satisfy_buchberger(raw in raw_ideal()) {
        set_posthoc_checks(true);
        let r = ring(NVARS);
        let gens: Vec<Polynomial> = raw.iter().map(|p| poly(&r, p)).collect();
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::elimination([0])] {
            let Some((gb, _)) = within_budget(|| groebner_basis(&r, &gens, order, budget())) else { continue };
            prop_assert!(first_nonzero_spair(&r, &gb, order).unwrap().is_none());
            let handle = IdealHandle::new(&r, gb.clone()).unwrap();
            for g in &gens {
                prop_assert!(handle.contains(g).unwrap());
            }
            let original = IdealHandle::new(&r, gens.clone()).unwrap();
            for g in &gb {
                prop_assert!(original.contains(g).unwrap());
            }
        }
        prop_assert!(posthoc_checks_performed() > 0);
    }

    #[test]
    fn elimination_is_sound(raw in raw_ideal(), extra in raw_poly()) {
        let r = ring(NVARS);
        let i = ideal(&r, &raw);
        let Some(elim) = within_budget(|| i.eliminate(&[0])) else { return Ok(()) };
        for g in elim.generators() {
            prop_assert!(free_of(g, 0));
            prop_assert!(i.contains(g).unwrap());
        }
        // anything in I that avoids x1 must land in the elimination ideal
        let probe: Vec<Polynomial> = raw.iter().map(|p| poly(&r, p)).filter(|p| free_of(p, 0)).collect();
        let e = poly(&r, &extra);
        for g in probe {
            let q = if free_of(&e, 0) { &g * &e } else { g };
            prop_assert!(elim.contains(&q).unwrap());
        }
    }

    #[test]
    fn intersection_and_colon_are_sound(a in raw_ideal(), b in raw_ideal()) {
        let r = ring(NVARS);
        let (i, j) = (ideal(&r, &a), ideal(&r, &b));
        if let Some(meet) = within_budget(|| i.intersect(&j)) {
            prop_assert!(i.contains_ideal(&meet).unwrap());
            prop_assert!(j.contains_ideal(&meet).unwrap());
            if let Some(prod) = within_budget(|| i.product(&j)) {
                prop_assert!(meet.contains_ideal(&prod).unwrap());
            }
        }
        if let Some(colon) = within_budget(|| i.quotient(&j)) {
            prop_assert!(colon.contains_ideal(&i).unwrap());
            for c in colon.generators() {
                for g in j.generators() {
                    prop_assert!(i.contains(&(c * g)).unwrap());
                }
            }
        }
    }

    #[test]
    fn saturation_is_sound(a in raw_ideal(), f in raw_poly()) {
        let r = ring(NVARS);
        let i = ideal(&r, &a);
        let f = poly(&r, &f);
        prop_assume!(!f.is_zero());
        let Some(sat) = within_budget(|| i.saturate(&f)) else { return Ok(()) };
        let Some(colon) = within_budget(|| i.quotient_by(&f)) else { return Ok(()) };
        prop_assert!(colon.contains_ideal(&i).unwrap());
        prop_assert!(sat.contains_ideal(&colon).unwrap());
        if let Some(again) = within_budget(|| sat.quotient_by(&f)) {
            prop_assert!(again.equals(&sat).unwrap());
        }
        for s in sat.generators() {
            // some power of f carries s into I
            let mut q = s.clone();
            let mut hit = i.contains(&q).unwrap();
            for _ in 0..8 {
                if hit {
                    break;
                }
                q = &q * &f;
                hit = i.contains(&q).unwrap();
            }
            prop_assert!(hit);
        }
    }
}
