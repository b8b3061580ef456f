use dualhs_core::dualhs::{
    dual_hilbert_coefficients, fit_numerical, hilbert_coefficients, minimal_reduction, phi, verify, ClaimId, Config, DualError, Instance,
    SemigroupQuotient, SeriesNumerator, Verdict,
};
use dualhs_core::homology::{dual_hs_value, ext_length, hom_length};
use dualhs_core::poly::{MonomialOrder, PolyRing, Polynomial};
use dualhs_core::ring::{FPModule, QuotientRing};
use dualhs_core::{Rational, Scalar, F32003};
use proptest::prelude::*;

fn ring<S: Scalar>(vars: &[&str], rels: &[&str]) -> QuotientRing<S> {
    let p = PolyRing::with_vars(vars, MonomialOrder::Grevlex).unwrap();
    let rels: Vec<Polynomial<S>> = rels.iter().map(|t| p.parse(t).unwrap()).collect();
    QuotientRing::new(&p, &rels).unwrap()
}

fn conic_module<S: Scalar>() -> FPModule<S> {
    let r = ring::<S>(&["x", "y"], &["x^2 + x*y + y^2"]);
    let gens: Vec<Vec<Polynomial<S>>> =
        [["x", "-y"], ["x+y", "x"]].iter().map(|g| g.iter().map(|t| r.poly().parse(t).unwrap()).collect()).collect();
    FPModule::submodule(&r, &gens).unwrap()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn conic_invariants<S: Scalar>() {
    let m = conic_module::<S>();
    let vars = m.ring().poly().vars();
    let cfg = Config::default();
    let dual = dual_hilbert_coefficients(&m, &vars, &cfg).unwrap();
    assert_eq!(dual.coefficients, vec![2, 0]);
    assert_eq!(dual.numerator.coefficients, vec![2]);
    assert_eq!(hilbert_coefficients(&m, &vars, &cfg).unwrap().coefficients, vec![2, 0]);
    let red = minimal_reduction(m.ring(), &vars, 0).unwrap();
    assert_eq!((red.j.len(), red.r), (1, 1));
    assert_eq!(phi(&m, &vars, red.r).unwrap(), 2);
}

#[test]
fn conic_module_invariants() {
    conic_invariants::<Rational>();
    conic_invariants::<F32003>();
}

#[test]
fn every_claim_runs_on_the_conic_module() {
    let inst = Instance::at_maximal(conic_module::<F32003>(), "conic module");
    for &claim in ClaimId::ALL {
        match verify(claim, &inst, &Config::default()) {
            Ok(rep) => assert_eq!(rep.verdict, Verdict::Pass, "{claim}: {rep:?}"),
            // Artinian-only claims reject a one-dimensional ring, and the
            // maximal ideal of the conic is not a parameter ideal
            Err(DualError::HypothesesUnmet(_)) => {
                assert!(matches!(claim, ClaimId::Sec51 | ClaimId::Sec63 | ClaimId::Matlis | ClaimId::Ex25), "{claim}")
            }
            Err(e) => panic!("{claim}: {e}"),
        }
    }
}

#[test]
fn claim_ids_round_trip() {
    for &c in ClaimId::ALL {
        assert_eq!(c.as_str().parse::<ClaimId>(), Ok(c));
    }
    assert!("THM99".parse::<ClaimId>().is_err());
}

#[test]
fn non_gorenstein_rings_are_rejected() {
    let r = ring::<Rational>(&["x", "y"], &["x^2", "x*y", "y^2"]);
    let m = FPModule::free(&r, 1);
    let err = dual_hilbert_coefficients(&m, &r.poly().vars(), &Config::default()).unwrap_err();
    assert!(err.to_string().contains("Gorenstein"), "{err}");
}

#[test]
fn semigroup_quotient_beyond_the_tested_range() {
    let sg = SemigroupQuotient::new(&(8..=14).collect::<Vec<_>>(), 8).unwrap();
    let s = sg.quotient_ring::<F32003>().unwrap();
    assert_eq!(s.length().unwrap(), 8);
    assert!(s.is_gorenstein());
    let c = dual_hilbert_coefficients(&FPModule::residue_field(&s), &s.poly().vars(), &Config::default()).unwrap();
    assert_eq!(c.coefficients[1], 1 - sg.embedding_dimension() as i64);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn free_module_dual_values(nvars in 1usize..=3, rank in 1usize..=3, n in 0u32..=4) {
        let names = ["x", "y", "z"];
        let r = ring::<F32003>(&names[..nvars], &[]);
        let v = dual_hs_value(&FPModule::free(&r, rank), &r.poly().vars(), n).unwrap() as u64;
        prop_assert_eq!(v, rank as u64 * binom(n as u64 + nvars as u64, nvars as u64));
    }

    /// Over `k[x,y]/(x^a, y^b)`, the cyclic module `S/(x^c, y^d)` has length
    /// `min(a,c) min(b,d)`, and so does its dual.
    #[test]
    fn matlis_on_monomial_complete_intersections(a in 1u32..=3, b in 1u32..=3, c in 1u32..=4, d in 1u32..=4) {
        let s = ring::<Rational>(&["x", "y"], &[&format!("x^{a}"), &format!("y^{b}")]);
        let p = s.poly();
        let n = FPModule::cyclic(&s, &[p.parse(&format!("x^{c}")).unwrap(), p.parse(&format!("y^{d}")).unwrap()]).unwrap();
        let len = (a.min(c) * b.min(d)) as usize;
        prop_assert_eq!(n.to_finite().unwrap().dim(), len);
        prop_assert_eq!(hom_length(&n, &s.as_finite_module().unwrap()).unwrap(), len);
        // injectivity of S over itself
        prop_assert_eq!(ext_length(1, &n, &s.as_finite_module().unwrap()).unwrap(), 0);
    }

    #[test]
    fn fitted_polynomials_reproduce_their_values(coeffs in prop::collection::vec(-5i64..=5, 1..=3), post in 0usize..=3) {
        // values of a polynomial in binomial form, with noise before `post`
        let d = coeffs.len() - 1;
        let poly = |n: i64| -> i64 {
            coeffs.iter().enumerate().map(|(i, c)| c * binom_i(n + (d - i) as i64, (d - i) as i64)).sum()
        };
        let values: Vec<i64> = (0..(2 * d + 8 + post) as i64).map(|n| if (n as usize) < post { poly(n) + 7 } else { poly(n) }).collect();
        let f = fit_numerical(&values, d).unwrap();
        for (n, v) in values.iter().enumerate().skip(post) {
            prop_assert_eq!(f.polynomial_value(n as i64), *v);
        }
        let s = SeriesNumerator::from_values(&values, f.postulation, d + 1).unwrap();
        prop_assert_eq!(s.expand(values.len()), values);
    }
}

fn binom_i(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        return if k == 0 { 1 } else { 0 };
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
