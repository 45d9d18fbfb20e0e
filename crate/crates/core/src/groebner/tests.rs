use super::*;
use crate::polyring::{MonomialOrder, Polynomial, Ring, RingDescriptor, VariableBlock};

fn ring(vars: &[&str]) -> Ring {
    RingDescriptor::new(32003, vec![VariableBlock::new("v", vars.iter().map(|s| s.to_string()).collect(), (1, 0))])
        .unwrap()
}

fn ideal(r: &Ring, gens: &[&str]) -> IdealHandle {
    IdealHandle::new(r, gens.iter().map(|g| Polynomial::parse(r, g).unwrap()).collect()).unwrap()
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

#[test]
fn basis_examples() {
    let r = ring(&["x", "y"]);
    let gb = ideal(&r, &["x^2", "x*y"]).basis().unwrap();
    assert_eq!(strings(&gb), vec!["x*y", "x^2"]);
    let gb = ideal(&r, &["x + y", "x - y"]).basis().unwrap();
    assert_eq!(strings(&gb), vec!["y", "x"]);
    // hand trace: S(xy-1, y^2-1) = y*(xy-1) - x*(y^2-1) = x - y
    let lex = ideal(&r, &["x*y - 1", "y^2 - 1"]).groebner_basis(MonomialOrder::Lex).unwrap();
    assert_eq!(strings(&lex), vec!["y^2 - 1", "x - y"]);
    assert!(ideal(&r, &[]).basis().unwrap().is_empty());
}

#[test]
fn normal_form_examples() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2 - y"]);
    let nf = i.normal_form(&Polynomial::parse(&r, "x^2").unwrap(), MonomialOrder::Lex).unwrap();
    assert_eq!(nf.to_string(), "y");
    let j = ideal(&r, &["x^3 - y*x", "y^2 + x"]);
    for g in j.generators() {
        assert!(j.normal_form(g, MonomialOrder::Grevlex).unwrap().is_zero());
    }
    assert!(!j.contains(&Polynomial::one(&r)).unwrap());
}

#[test]
fn elimination_examples() {
    let r = ring(&["t", "x", "y"]);
    let e = ideal(&r, &["t - x", "t - y"]).eliminate(&[0]).unwrap();
    assert!(e.equals(&ideal(&r, &["x - y"])).unwrap());
    let same = ideal(&r, &["x^2 - y"]).eliminate(&[]).unwrap();
    assert!(same.equals(&ideal(&r, &["x^2 - y"])).unwrap());
    let none = ideal(&r, &["t*x - 1"]).eliminate(&[0]).unwrap();
    assert!(none.is_zero());
}

#[test]
fn quotient_examples() {
    let r = ring(&["x", "y"]);
    let q = ideal(&r, &["x^2", "x*y"]).quotient(&ideal(&r, &["x"])).unwrap();
    assert!(q.equals(&ideal(&r, &["x", "y"])).unwrap());
    let i = ideal(&r, &["x^3 - y^2", "x*y"]);
    assert!(i.quotient(&ideal(&r, &["1"])).unwrap().equals(&i).unwrap());
    assert!(ideal(&r, &["x"]).quotient(&ideal(&r, &["x"])).unwrap().is_unit().unwrap());
}

#[test]
fn saturation_examples() {
    let r = ring(&["x", "y"]);
    let y = Polynomial::parse(&r, "y").unwrap();
    let x = Polynomial::parse(&r, "x").unwrap();
    assert!(ideal(&r, &["x^2*y"]).saturate(&y).unwrap().equals(&ideal(&r, &["x^2"])).unwrap());
    assert!(ideal(&r, &["x"]).saturate(&x).unwrap().is_unit().unwrap());
    let p = ideal(&r, &["x^2 - y^3"]);
    assert!(p.saturate(&x).unwrap().equals(&p).unwrap());
    assert_eq!(ideal(&r, &["x"]).saturate(&Polynomial::zero(&r)).unwrap_err(), GbError::ZeroPolynomial);
}

#[test]
fn radical_examples() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2"]);
    assert!(i.radical_contains(&Polynomial::parse(&r, "x").unwrap()).unwrap());
    assert!(!i.radical_contains(&Polynomial::parse(&r, "y").unwrap()).unwrap());
    assert!(i.radical_contains(&Polynomial::parse(&r, "x^2*y").unwrap()).unwrap());
}

#[test]
fn dimension_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(ideal(&r, &[]).dim_height().unwrap(), (2, 0));
    assert_eq!(ideal(&r, &["x", "y"]).dim_height().unwrap(), (0, 2));
    assert_eq!(ideal(&r, &["x*y"]).dim_height().unwrap(), (1, 1));
    assert_eq!(ideal(&r, &["x", "1"]).dim_height().unwrap_err(), GbError::UnitIdeal);
}

#[test]
fn hilbert_examples() {
    let r = ring(&["x", "y", "z"]);
    let h = ideal(&r, &[]).hilbert().unwrap();
    assert_eq!((h.numerator, h.dim, h.multiplicity), (vec![1], 3, 1));
    let r2 = ring(&["x", "y"]);
    let h = ideal(&r2, &["x*y"]).hilbert().unwrap();
    assert_eq!((h.numerator, h.dim, h.multiplicity), (vec![1, 1], 1, 2));
    let h = ideal(&r, &["x", "y", "z"]).hilbert().unwrap();
    assert_eq!((h.numerator, h.dim, h.multiplicity), (vec![1], 0, 1));
    assert_eq!(ideal(&r, &["x^2 - y"]).hilbert().unwrap_err(), GbError::NotHomogeneous);
}

#[test]
fn equality_examples() {
    let r = ring(&["x", "y"]);
    assert!(ideal(&r, &["x", "y"]).equals(&ideal(&r, &["x + y", "y"])).unwrap());
    assert!(!ideal(&r, &["x^2"]).equals(&ideal(&r, &["x"])).unwrap());
    assert!(ideal(&r, &["x^2", "0"]).equals(&ideal(&r, &["x^2"])).unwrap());
}

#[test]
fn budget_produces_timeout() {
    let r = ring(&["a", "b", "c", "d"]);
    let cyclic = ideal(&r, &["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"])
        .with_budget(Budget { max_pairs: 2, max_terms: u64::MAX });
    assert!(cyclic.basis().unwrap_err().is_timeout());
}

#[test]
fn cyclic4_is_a_groebner_basis() {
    let r = ring(&["a", "b", "c", "d"]);
    let cyclic = ideal(&r, &["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"]);
    let gb = cyclic.basis().unwrap();
    assert!(first_nonzero_spair(&r, &gb, MonomialOrder::Grevlex).unwrap().is_none());
    assert_eq!(gb.len(), 7);
    assert_eq!(cyclic.dim_height().unwrap(), (1, 3));
}

#[test]
fn exponent_overflow_is_an_error() {
    let r = ring(&["x", "y"]);
    // reducing x*y^100 by x - y^100 needs y^200
    let err = ideal(&r, &["x - y^100", "x^2 - y"]).groebner_basis(MonomialOrder::Lex).unwrap_err();
    assert!(matches!(err, GbError::ExponentOverflow));
    assert!(err.is_timeout());
}

#[test]
fn posthoc_check_flags_a_non_basis() {
    let r = ring(&["x", "y", "z"]);
    let gens: Vec<Polynomial> = ["x*y - 1", "y^2 - 1"].iter().map(|g| Polynomial::parse(&r, g).unwrap()).collect();
    assert_eq!(first_nonzero_spair(&r, &gens, MonomialOrder::Lex).unwrap(), Some((0, 1)));
    // a chain through x*y*z must not hide the failing pair (x*y - 1, y*z)
    let gens: Vec<Polynomial> = ["x*y - 1", "y*z", "x*z"].iter().map(|g| Polynomial::parse(&r, g).unwrap()).collect();
    assert!(first_nonzero_spair(&r, &gens, MonomialOrder::Grevlex).unwrap().is_some());
}
