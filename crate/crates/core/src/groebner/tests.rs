use proptest::prelude::*;

use super::*;
use crate::poly::MonomialOrder;
use crate::scalar::{Fp, Rational};

type F = Fp<32003>;

fn qring(vars: &[&str], order: MonomialOrder) -> PolyRing<Rational> {
    PolyRing::with_vars(vars, order).unwrap()
}

fn parse_all<S: Scalar>(r: &PolyRing<S>, texts: &[&str]) -> Vec<Polynomial<S>> {
    texts.iter().map(|t| r.parse(t).unwrap()).collect()
}

/// Every S-pair of the basis reduces to zero.
fn satisfies_criterion<S: Scalar>(g: &GroebnerBasis<S>) -> bool {
    let order = g.ring().order();
    let e = g.elements();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let (a, b) = (e[i].lead().unwrap(), e[j].lead().unwrap());
            if a.pos != b.pos {
                continue;
            }
            let l = a.mon.lcm(&b.mon);
            let s = e[i].mul_monomial(&a.mon.quotient_of(&l)).sub_mul(&S::one(), &b.mon.quotient_of(&l), &e[j], order);
            if !g.reduce(&s).is_zero() {
                return false;
            }
        }
    }
    true
}

#[test]
fn ideal_examples() {
    let r = qring(&["x", "y"], MonomialOrder::Grevlex);
    let gens = parse_all(&r, &["x^2", "y^2"]);
    assert_eq!(buchberger(&r, &gens).polys(), vec![r.parse("y^2").unwrap(), r.parse("x^2").unwrap()]);
    let f = r.parse("x^2 + x*y + y^2").unwrap();
    assert_eq!(buchberger(&r, std::slice::from_ref(&f)).polys(), vec![f.clone()]);

    let lex = qring(&["y", "x"], MonomialOrder::Lex);
    let g = buchberger(&lex, &parse_all(&lex, &["y - x^2", "y^2"]));
    let mut got = g.polys();
    got.sort_by_key(|p| lex.format(p));
    assert_eq!(got, parse_all(&lex, &["x^4", "y - x^2"]));
    assert!(satisfies_criterion(&g));
}

#[test]
fn normal_form_examples() {
    let r = qring(&["x", "y"], MonomialOrder::Grevlex);
    let g = buchberger(&r, &parse_all(&r, &["x^2 + x*y + y^2"]));
    let nf = normal_form(&r.parse("x^2").unwrap(), &g);
    assert_eq!(nf, r.parse("-x*y - y^2").unwrap());
    assert!(normal_form(&r.parse("x^3 - y^3").unwrap(), &g).is_zero());
    assert_eq!(normal_form(&nf, &g), nf);
}

#[test]
fn power_examples() {
    let r = qring(&["x", "y"], MonomialOrder::Grevlex);
    let m = r.vars();
    assert_eq!(ideal_power(&r, &m, 2).len(), 3);
    assert_eq!(ideal_power(&r, &m, 0), vec![r.one()]);
    let cube = buchberger(&r, &ideal_power(&r, &m, 3));
    assert_eq!(cube.len(), 4);
}

#[test]
fn power_multiplicativity() {
    let r = qring(&["x", "y", "z"], MonomialOrder::Grevlex);
    let i = parse_all(&r, &["x^2 + y*z", "y^2 - x*z", "z^3"]);
    for a in 0..=2u32 {
        for b in 0..=2u32 {
            let lhs = buchberger(&r, &ideal_product(&r, &ideal_power(&r, &i, a), &ideal_power(&r, &i, b)));
            let rhs = buchberger(&r, &ideal_power(&r, &i, a + b));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn module_examples() {
    let r = qring(&["x", "y"], MonomialOrder::Grevlex);
    let e = vec![vec![r.one(), r.zero()], vec![r.zero(), r.one()]];
    let g = module_groebner(&r, 2, &e);
    assert!(g.is_whole_module());
    assert_eq!(g.len(), 2);

    let col = vec![vec![r.var(0), r.var(1)]];
    let g = module_groebner(&r, 2, &col);
    assert_eq!(g.columns(), col);

    let g = module_groebner(&r, 2, &[vec![r.var(0), r.zero()], vec![r.var(1), r.zero()]]);
    assert_eq!(g.leading_monomials(0).len(), 2);
    assert!(g.leading_monomials(1).is_empty());
    assert!(satisfies_criterion(&g));
}

fn apply<S: Scalar>(r: &PolyRing<S>, cols: &[Vec<Polynomial<S>>], v: &[Polynomial<S>]) -> Vec<Polynomial<S>> {
    let rows = cols.first().map_or(0, |c| c.len());
    (0..rows)
        .map(|i| cols.iter().zip(v).fold(r.zero(), |acc, (c, x)| r.add(&acc, &r.mul(&c[i], x))))
        .collect()
}

#[test]
fn koszul_syzygy() {
    let r = qring(&["x", "y"], MonomialOrder::Grevlex);
    let a = vec![vec![r.var(0)], vec![r.var(1)]];
    let syz = syzygy_matrix(&r, 1, &a, &GroebnerBasis::empty(&r, 1));
    assert_eq!(syz.len(), 1);
    let k = vec![r.var(1), r.var(0).neg()];
    assert!(syz[0] == k || syz[0] == vec![r.var(1).neg(), r.var(0)]);
}

#[test]
fn syzygies_over_hypersurface() {
    let r = qring(&["x", "y"], MonomialOrder::Grevlex);
    let j = buchberger(&r, &parse_all(&r, &["x^2 + x*y + y^2"]));
    let a = vec![vec![r.var(0)], vec![r.var(1)]];
    let syz = syzygy_matrix(&r, 1, &a, &j);
    for s in &syz {
        assert!(apply(&r, &a, s).iter().all(|f| j.contains(f)));
    }
    let span = module_groebner(&r, 2, &syz);
    let k = vec![r.var(1), r.var(0).neg()];
    let other = parse_all(&r, &["x", "x + y"]);
    // membership modulo J in each coordinate
    let mut with_j = syz.clone();
    for f in j.polys() {
        with_j.push(vec![f.clone(), r.zero()]);
        with_j.push(vec![r.zero(), f]);
    }
    let span_j = module_groebner(&r, 2, &with_j);
    assert!(span_j.contains_column(&k));
    assert!(span_j.contains_column(&other));
    assert!(!span.is_empty());
}

#[test]
fn identity_has_no_syzygies() {
    let r = qring(&["x", "y"], MonomialOrder::Grevlex);
    let id = vec![vec![r.one(), r.zero()], vec![r.zero(), r.one()]];
    assert!(syzygy_matrix(&r, 2, &id, &GroebnerBasis::empty(&r, 1)).is_empty());
}

fn fp_ring() -> PolyRing<F> {
    PolyRing::with_vars(&["x", "y", "z"], MonomialOrder::Grevlex).unwrap()
}

fn small_poly() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec(([0u32..3, 0u32..3, 0u32..3], -5i64..6), 1..4)
}

/// A random form of degree 1 or 2.
fn form() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    (1u32..3).prop_flat_map(|d| {
        let mons: Vec<[u32; 3]> = crate::poly::monomials_of_degree(3, d)
            .into_iter()
            .map(|m| [m.exponents()[0], m.exponents()[1], m.exponents()[2]])
            .collect();
        prop::collection::vec((prop::sample::select(mons), -5i64..6), 1..4)
    })
}

fn build(r: &PolyRing<F>, t: &[([u32; 3], i64)]) -> Polynomial<F> {
    Polynomial::from_terms(t.iter().map(|(e, c)| (crate::poly::Monomial::from_exponents(e), F::new(*c))).collect(), r.order())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_canonical(gens in prop::collection::vec(small_poly(), 1..4), f in small_poly(), perm in 0usize..6) {
        let r = fp_ring();
        let mut gens: Vec<Polynomial<F>> = gens.iter().map(|t| build(&r, t)).collect();
        let g = buchberger(&r, &gens);
        prop_assert!(satisfies_criterion(&g));
        // a different input order gives the same reduced basis
        let n = gens.len();
        gens.rotate_left(perm % n);
        gens.reverse();
        let g2 = buchberger(&r, &gens);
        prop_assert_eq!(&g, &g2);
        let f = build(&r, &f);
        let nf = normal_form(&f, &g);
        prop_assert_eq!(normal_form(&nf, &g), nf.clone());
        // f - nf lies in the ideal
        prop_assert!(g.contains(&r.sub(&f, &nf)));
        // reducing a sum with ideal elements does not change the remainder
        let shifted = r.add(&f, &r.mul(&gens[0], &r.var(perm % 3)));
        prop_assert_eq!(normal_form(&shifted, &g), nf);
    }

    #[test]
    fn syzygies_compose_to_zero(cols in prop::collection::vec(prop::collection::vec(form(), 2), 1..4), jg in form()) {
        let r = fp_ring();
        let cols: Vec<Vec<Polynomial<F>>> = cols.iter().map(|c| c.iter().map(|t| build(&r, t)).collect()).collect();
        let j = buchberger(&r, &[build(&r, &jg)]);
        let syz = syzygy_matrix(&r, 2, &cols, &j);
        for s in &syz {
            for e in apply(&r, &cols, s) {
                prop_assert!(j.contains(&e));
            }
        }
    }
}

