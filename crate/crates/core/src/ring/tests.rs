use super::*;
use crate::poly::{MonomialOrder, PolyRing, Polynomial};
use crate::scalar::{Fp, Rational, Scalar};

type F = Fp<32003>;

fn poly<S: Scalar>(vars: &[&str]) -> PolyRing<S> {
    PolyRing::with_vars(vars, MonomialOrder::Grevlex).unwrap()
}

fn ring<S: Scalar>(vars: &[&str], rels: &[&str]) -> QuotientRing<S> {
    let p = poly::<S>(vars);
    let gens: Vec<Polynomial<S>> = rels.iter().map(|r| p.parse(r).unwrap()).collect();
    QuotientRing::new(&p, &gens).unwrap()
}

fn vecs<S: Scalar>(r: &QuotientRing<S>, rows: &[&[&str]]) -> Vec<Vec<Polynomial<S>>> {
    rows.iter().map(|row| row.iter().map(|t| r.poly().parse(t).unwrap()).collect()).collect()
}

fn example_module<S: Scalar>() -> (QuotientRing<S>, FPModule<S>) {
    let r = ring::<S>(&["x", "y"], &["x^2 + x*y + y^2"]);
    let m = FPModule::submodule(&r, &vecs(&r, &[&["x", "-y"], &["x+y", "x"]])).unwrap();
    (r, m)
}

#[test]
fn ring_classification() {
    let r = ring::<Rational>(&["x", "y"], &[]);
    assert_eq!((r.dim(), r.is_graded(), r.is_gorenstein()), (2, true, true));
    let r = ring::<Rational>(&["x", "y"], &["x^2 + x*y + y^2"]);
    assert_eq!((r.dim(), r.is_graded(), r.is_gorenstein()), (1, true, true));
    let r = ring::<Rational>(&["x", "y"], &["x^2", "y^2"]);
    assert_eq!((r.dim(), r.length().unwrap(), r.is_gorenstein()), (0, 4, true));
    assert_eq!(r.as_finite_module().unwrap().socle_dim(), 1);
    let r = ring::<F>(&["x", "y"], &["x^2", "x*y", "y^2"]);
    assert!(!r.is_gorenstein());
    let r = ring::<F>(&["x", "y"], &["x^2", "x*y"]);
    assert!(!r.is_cohen_macaulay());
    let r = ring::<F>(&["x", "y", "z"], &["x^2 + y^2 + z^2"]);
    assert!(r.is_gorenstein());
    assert_eq!(r.hilbert_series().unwrap().multiplicity(), 2);
}

#[test]
fn primary_ideals() {
    let r = ring::<Rational>(&["x", "y"], &[]);
    assert!(r.is_mprimary(&r.poly().vars()));
    assert!(!r.is_mprimary(&[r.poly().var(0)]));
    let r = ring::<Rational>(&["x", "y"], &["x^2 + x*y + y^2"]);
    assert!(r.is_mprimary(&[r.poly().var(0)]));
    let gb = r.extend_ideal(&[r.poly().var(0)]);
    assert!(gb.contains(&r.poly().parse("y^3").unwrap()));
}

#[test]
fn truncations() {
    let r = ring::<Rational>(&["x", "y"], &["x^2 + x*y + y^2"]);
    let m = r.poly().vars();
    let t = r.truncation(&m, 2).unwrap();
    assert_eq!(t.dim(), 3);
    assert_eq!(t.labels(), &["1", "x", "y"]);
    assert!(t.operators_commute() && t.operators_nilpotent());
    let p = ring::<Rational>(&["x", "y"], &[]);
    assert_eq!(p.truncation(&p.poly().vars(), 1).unwrap().dim(), 1);
    assert_eq!(r.truncation(&m, 0).unwrap().dim(), 0);
    assert!(matches!(p.truncation(&[p.poly().var(0)], 2), Err(RingError::NotMPrimary)));
    let mut prev = 0;
    for n in 0..6 {
        let t = r.truncation(&m, n).unwrap();
        assert!(t.dim() >= prev);
        assert!(t.operators_commute() && t.operators_nilpotent());
        prev = t.dim();
    }
}

#[test]
fn submodule_presentations() {
    let r = ring::<Rational>(&["x", "y"], &["x^2 + x*y + y^2"]);
    let free = FPModule::submodule(&r, &vecs(&r, &[&["1", "0"], &["0", "1"]])).unwrap();
    assert!(free.columns().is_empty());
    let (_, m) = example_module::<Rational>();
    assert_eq!(m.rank0(), 2);
    assert!(!m.columns().is_empty());
    let s = ring::<Rational>(&["x", "y"], &["x^2", "y^2"]);
    let xs = FPModule::ideal(&s, &[s.poly().var(0)]).unwrap();
    // (x) has basis x, xy
    assert_eq!(xs.to_finite().unwrap().dim(), 2);
}

#[test]
fn minimal_presentations() {
    let r = ring::<Rational>(&["x", "y"], &[]);
    let m = FPModule::cokernel(&r, vec![1, 0], vecs(&r, &[&["1", "x"], &["y", "x^2"]])).unwrap();
    let min = m.minimal_presentation().unwrap();
    assert_eq!(min.rank0(), 1);
    for n in 0..5 {
        assert_eq!(m.truncation_length(&r.poly().vars(), n).unwrap(), min.truncation_length(&r.poly().vars(), n).unwrap());
    }
    let (_, m) = example_module::<Rational>();
    assert_eq!(m.num_generators().unwrap(), 2);
    let k = FPModule::residue_field(&r);
    assert_eq!(k.num_generators().unwrap(), 1);
    // non-graded positive-dimensional input is rejected
    let u = ring::<Rational>(&["x", "y"], &["x^2 - y"]);
    assert!(!u.is_graded());
    assert!(matches!(FPModule::residue_field(&u).minimal_presentation(), Err(RingError::NotGraded)));
}

#[test]
fn syzygy_modules() {
    let r = ring::<F>(&["x", "y"], &[]);
    assert_eq!(FPModule::free(&r, 2).syzygy_module().unwrap().rank0(), 0);
    let s = ring::<F>(&["x", "y"], &["x^2", "y^2"]);
    let l = FPModule::residue_field(&s).syzygy_module().unwrap();
    assert_eq!(l.num_generators().unwrap(), 2);
    let mut m = FPModule::residue_field(&r);
    for _ in 0..3 {
        m = m.syzygy_module().unwrap();
    }
    assert_eq!(m.rank0(), 0);
    assert_eq!(FPModule::residue_field(&r).betti_numbers(3).unwrap(), vec![1, 2, 1, 0]);
    assert_eq!(FPModule::residue_field(&s).betti_numbers(3).unwrap(), vec![1, 2, 3, 4]);
}

#[test]
fn truncation_lengths() {
    let r = ring::<Rational>(&["x", "y"], &["x^2 + x*y + y^2"]);
    let m = r.poly().vars();
    let rr = FPModule::free(&r, 1);
    let r3 = FPModule::free(&r, 3);
    for n in 0..6u32 {
        let l = rr.truncation_length(&m, n).unwrap();
        assert_eq!(l, if n == 0 { 1 } else { 2 * n as usize + 1 });
        assert_eq!(r3.truncation_length(&m, n).unwrap(), 3 * l);
    }
    let (_, ex) = example_module::<Rational>();
    assert_eq!(ex.truncation_length(&m, 0).unwrap(), 2);
}

#[test]
fn cohen_macaulay_modules() {
    let r = ring::<Rational>(&["x", "y"], &[]);
    assert!(FPModule::free(&r, 1).is_maximal_cohen_macaulay().unwrap());
    let (_, ex) = example_module::<Rational>();
    assert!(ex.is_maximal_cohen_macaulay().unwrap());
    let bad = ring::<Rational>(&["x", "y"], &["x^2", "x*y"]);
    assert!(!FPModule::free(&bad, 1).is_maximal_cohen_macaulay().unwrap());
    assert!(!FPModule::residue_field(&r).is_maximal_cohen_macaulay().unwrap());
}

#[test]
fn duals() {
    let r = ring::<F>(&["x", "y"], &["x^2 + x*y + y^2"]);
    let d = FPModule::free(&r, 3).dual().unwrap();
    assert_eq!(d.rank0(), 3);
    assert!(d.columns().is_empty());
    let (_, ex) = example_module::<F>();
    let dual = ex.dual().unwrap();
    assert_eq!(dual.hilbert_series().unwrap().multiplicity(), 2);
    assert!(matches!(FPModule::residue_field(&r).dual(), Err(RingError::NotMaximalCohenMacaulay)));
}

#[test]
fn hilbert_series_of_modules() {
    let (_, ex) = example_module::<F>();
    let hs = ex.hilbert_series().unwrap();
    assert_eq!(hs.dim, Some(1));
    assert_eq!(hs.multiplicity(), 2);
}
