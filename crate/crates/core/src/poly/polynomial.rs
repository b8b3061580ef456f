use std::cmp::Ordering;
use std::fmt::Write as _;
use std::marker::PhantomData;
use std::sync::Arc;

use super::monomial::{Monomial, MonomialOrder};
use super::parse;
use super::PolyError;
use crate::scalar::Scalar;

/// Variable names and a term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSignature {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl RingSignature {
    pub fn new<T: AsRef<str>>(vars: &[T], order: MonomialOrder) -> Result<Self, PolyError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(PolyError::BadVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(RingSignature { vars, order })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// A polynomial: nonzero terms sorted strictly descending in the term order
/// of the ring that built it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<S> {
    terms: Vec<(Monomial, S)>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    /// Caller guarantees the terms are sorted and nonzero.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, S)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    pub fn from_terms(mut terms: Vec<(Monomial, S)>, order: MonomialOrder) -> Self {
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, S)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some((lm, lc)) = out.last_mut() {
                if *lm == m {
                    *lc = lc.clone() + c;
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn term(c: S, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn terms(&self) -> &[(Monomial, S)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, S)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading coefficient and monomial.
    pub fn leading_term(&self) -> Option<(&S, &Monomial)> {
        self.terms.first().map(|(m, c)| (c, m))
    }

    pub fn constant_term(&self) -> S {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(S::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), -a.clone())).collect() }
    }

    /// Multiply by `c * m`; monomial orders are multiplicative, so the term
    /// order is preserved.
    pub fn mul_term(&self, c: &S, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect() }
    }

    pub fn add(&self, other: &Self, order: MonomialOrder) -> Self {
        self.combine(other, order, false)
    }

    pub fn sub(&self, other: &Self, order: MonomialOrder) -> Self {
        self.combine(other, order, true)
    }

    fn combine(&self, other: &Self, order: MonomialOrder, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &S| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match order.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.clone() + sign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial { terms: out }
    }

    pub fn mul(&self, other: &Self, order: MonomialOrder) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Self::zero();
        for (m, c) in &small.terms {
            acc = acc.add(&big.mul_term(c, m), order);
        }
        acc
    }

    pub fn pow(&self, e: u32, order: MonomialOrder) -> Self {
        let nvars = self.terms.first().map_or(0, |(m, _)| m.nvars());
        let mut acc = Self::term(S::one(), Monomial::one(nvars));
        for _ in 0..e {
            acc = acc.mul(self, order);
        }
        acc
    }

    pub fn make_monic(&self) -> Self {
        match self.leading_term() {
            None => Self::zero(),
            Some((c, _)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Whether all exponent vectors have `nvars` entries.
    pub fn fits(&self, nvars: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.nvars() == nvars)
    }
}

/// Arithmetic operation selector for [`PolyRing::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial ring over the field `S`.
#[derive(Debug)]
pub struct PolyRing<S> {
    sig: Arc<RingSignature>,
    _field: PhantomData<fn() -> S>,
}

impl<S> Clone for PolyRing<S> {
    fn clone(&self) -> Self {
        PolyRing { sig: self.sig.clone(), _field: PhantomData }
    }
}

impl<S> PartialEq for PolyRing<S> {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig
    }
}

impl<S> Eq for PolyRing<S> {}

impl<S: Scalar> PolyRing<S> {
    pub fn new(sig: RingSignature) -> Self {
        PolyRing { sig: Arc::new(sig), _field: PhantomData }
    }

    /// Shorthand for a ring with the given variables and order.
    pub fn with_vars<T: AsRef<str>>(vars: &[T], order: MonomialOrder) -> Result<Self, PolyError> {
        Ok(Self::new(RingSignature::new(vars, order)?))
    }

    pub fn signature(&self) -> &RingSignature {
        &self.sig
    }

    pub fn nvars(&self) -> usize {
        self.sig.nvars()
    }

    pub fn order(&self) -> MonomialOrder {
        self.sig.order()
    }

    pub fn zero(&self) -> Polynomial<S> {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial<S> {
        self.constant(S::one())
    }

    pub fn constant(&self, c: S) -> Polynomial<S> {
        Polynomial::term(c, Monomial::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> Polynomial<S> {
        Polynomial::term(S::one(), Monomial::var(i, self.nvars()))
    }

    pub fn vars(&self) -> Vec<Polynomial<S>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial<S> {
        Polynomial::term(S::one(), m)
    }

    pub fn add(&self, f: &Polynomial<S>, g: &Polynomial<S>) -> Polynomial<S> {
        f.add(g, self.order())
    }

    pub fn sub(&self, f: &Polynomial<S>, g: &Polynomial<S>) -> Polynomial<S> {
        f.sub(g, self.order())
    }

    pub fn mul(&self, f: &Polynomial<S>, g: &Polynomial<S>) -> Polynomial<S> {
        f.mul(g, self.order())
    }

    pub fn pow(&self, f: &Polynomial<S>, e: u32) -> Polynomial<S> {
        if f.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        f.pow(e, self.order())
    }

    /// Checked arithmetic: both operands must belong to this ring.
    pub fn arith(&self, f: &Polynomial<S>, g: &Polynomial<S>, op: ArithOp) -> Result<Polynomial<S>, PolyError> {
        let n = self.nvars();
        if !f.fits(n) || !g.fits(n) {
            return Err(PolyError::SignatureMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(f, g),
            ArithOp::Sub => self.sub(f, g),
            ArithOp::Mul => self.mul(f, g),
        })
    }

    /// Random linear combination with coefficients from the field.
    pub fn combination(&self, gens: &[Polynomial<S>], coeffs: &[S]) -> Polynomial<S> {
        gens.iter().zip(coeffs).fold(self.zero(), |acc, (g, c)| self.add(&acc, &g.scale(c)))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<S>, PolyError> {
        parse::parse_poly(text, self)
    }

    /// Canonical printed form; `parse(format(f)) == f`.
    pub fn format(&self, f: &Polynomial<S>) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in f.terms().iter().enumerate() {
            let neg = c.is_negative_literal();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            let is_one = abs == S::one();
            match (mono.is_empty(), is_one) {
                (true, _) => write!(out, "{}", abs).unwrap(),
                (false, true) => out.push_str(&mono),
                (false, false) => write!(out, "{}*{}", abs, mono).unwrap(),
            }
        }
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.sig.vars()[i].clone() } else { format!("{}^{}", self.sig.vars()[i], e) })
            .collect();
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use num_traits::One;
    use proptest::prelude::*;

    fn ring() -> PolyRing<Rational> {
        PolyRing::with_vars(&["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring();
        let s = r.parse("x + y").unwrap();
        assert_eq!(r.mul(&s, &s), r.parse("x^2 + 2*x*y + y^2").unwrap());
        let f = r.parse("x^2 + x*y + y^2").unwrap();
        assert!(r.add(&f, &f.neg()).is_zero());
        assert_eq!(r.mul(&f, &r.one()), f);
    }

    #[test]
    fn leading_terms() {
        let r = ring();
        let f = r.parse("x^2 + x*y + y^2").unwrap();
        let (c, m) = f.leading_term().unwrap();
        assert_eq!((c.clone(), m.exponents()), (Rational::one(), &[2u32, 0][..]));
        let lex = PolyRing::<Rational>::with_vars(&["y", "x"], MonomialOrder::Lex).unwrap();
        let g = lex.parse("y - x^2").unwrap();
        assert_eq!(g.leading_term().unwrap().1.exponents(), &[1, 0]);
        let five = r.parse("5").unwrap();
        let (c, m) = five.leading_term().unwrap();
        assert_eq!(*c, Rational::from_i64(5));
        assert!(m.is_one());
        assert!(r.zero().leading_term().is_none());
    }

    #[test]
    fn signature_checks() {
        let r = ring();
        let other = PolyRing::<Rational>::with_vars(&["a", "b", "c"], MonomialOrder::Grevlex).unwrap();
        let f = other.var(2);
        assert_eq!(r.arith(&f, &r.var(0), ArithOp::Add), Err(PolyError::SignatureMismatch));
        assert!(RingSignature::new(&["x", "x"], MonomialOrder::Lex).is_err());
        assert!(RingSignature::new(&["1x"], MonomialOrder::Lex).is_err());
    }

    fn small_poly() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
        prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..5)
    }

    fn build(r: &PolyRing<Fp<32003>>, t: &[(u32, u32, i64)]) -> Polynomial<Fp<32003>> {
        Polynomial::from_terms(
            t.iter().map(|&(a, b, c)| (Monomial::from_exponents(&[a, b]), Fp::new(c))).filter(|(_, c)| *c != Fp::new(0)).collect(),
            r.order(),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            let r = PolyRing::<Fp<32003>>::with_vars(&["x", "y"], MonomialOrder::Grevlex).unwrap();
            let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
            prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
            prop_assert_eq!(r.mul(&f, &r.add(&g, &h)), r.add(&r.mul(&f, &g), &r.mul(&f, &h)));
            prop_assert_eq!(r.add(&r.add(&f, &g), &h), r.add(&f, &r.add(&g, &h)));
        }

        #[test]
        fn print_parse_round_trip(a in small_poly()) {
            let r = PolyRing::<Fp<32003>>::with_vars(&["x", "y"], MonomialOrder::Grevlex).unwrap();
            let f = build(&r, &a);
            prop_assert_eq!(r.parse(&r.format(&f)).unwrap(), f);
        }
    }
}
