use std::cmp::Ordering;

use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::scalar::Scalar;

/// A single term `coef * mon * e_pos` of a free-module vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<S> {
    pub pos: usize,
    pub mon: Monomial,
    pub coef: S,
}

/// Position-over-term comparison; lower positions rank higher.
pub fn pot_compare(order: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.compare(a.1, b.1))
}

/// An element of a free module `P^k`. Terms are kept in ascending
/// position-over-term order, so the leading term is the last one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<S> {
    terms: Vec<Term<S>>,
}

impl<S: Scalar> Vector<S> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_polys(entries: &[Polynomial<S>], order: MonomialOrder) -> Self {
        Self::from_polys_at(entries, 0, order)
    }

    /// Embed `entries` starting at position `offset`.
    pub fn from_polys_at(entries: &[Polynomial<S>], offset: usize, order: MonomialOrder) -> Self {
        let mut terms: Vec<Term<S>> = entries
            .iter()
            .enumerate()
            .flat_map(|(i, f)| {
                f.terms().iter().map(move |(m, c)| Term { pos: offset + i, mon: m.clone(), coef: c.clone() })
            })
            .collect();
        terms.sort_by(|a, b| pot_compare(order, (a.pos, &a.mon), (b.pos, &b.mon)));
        Vector { terms }
    }

    /// Entries at positions `0..rank` as polynomials.
    pub fn to_polys(&self, rank: usize) -> Vec<Polynomial<S>> {
        let mut buckets: Vec<Vec<(Monomial, S)>> = vec![Vec::new(); rank];
        for t in self.terms.iter().rev() {
            buckets[t.pos].push((t.mon.clone(), t.coef.clone()));
        }
        buckets.into_iter().map(Polynomial::from_sorted_terms).collect()
    }

    pub fn terms(&self) -> &[Term<S>] {
        &self.terms
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

    pub fn lead(&self) -> Option<&Term<S>> {
        self.terms.last()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
    }

    pub fn make_monic(&mut self) {
        if let Some(t) = self.terms.last() {
            let inv = t.coef.inv().expect("nonzero leading coefficient");
            if inv != S::one() {
                for t in &mut self.terms {
                    t.coef = t.coef.clone() * inv.clone();
                }
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { pos: t.pos, mon: t.mon.clone(), coef: t.coef.clone() * c.clone() })
                .collect(),
        }
    }

    /// `m * self`; orders are multiplicative so the sort survives.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Vector {
            terms: self.terms.iter().map(|t| Term { pos: t.pos, mon: t.mon.mul(m), coef: t.coef.clone() }).collect(),
        }
    }

    /// `self - c * m * other`.
    pub fn sub_mul(&self, c: &S, m: &Monomial, other: &Self, order: MonomialOrder) -> Self {
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let bj = |j: usize| {
            let t = &b[j];
            Term { pos: t.pos, mon: t.mon.mul(m), coef: -(t.coef.clone() * c.clone()) }
        };
        let mut pending = if j < b.len() { Some(bj(j)) } else { None };
        while i < a.len() {
            let Some(t) = pending.as_ref() else { break };
            match pot_compare(order, (a[i].pos, &a[i].mon), (t.pos, &t.mon)) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = if j < b.len() { Some(bj(j)) } else { None };
                }
                Ordering::Equal => {
                    let t = pending.take().unwrap();
                    let c = a[i].coef.clone() + t.coef;
                    if !c.is_zero() {
                        out.push(Term { pos: t.pos, mon: t.mon, coef: c });
                    }
                    i += 1;
                    j += 1;
                    pending = if j < b.len() { Some(bj(j)) } else { None };
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if let Some(t) = pending {
            out.push(t);
            j += 1;
            while j < b.len() {
                out.push(bj(j));
                j += 1;
            }
        }
        Vector { terms: out }
    }

    pub fn add(&self, other: &Self, order: MonomialOrder) -> Self {
        let nvars = other.terms.first().map_or(0, |t| t.mon.nvars());
        self.sub_mul(&-S::one(), &Monomial::one(nvars), other, order)
    }

    pub(crate) fn pop_lead(&mut self) -> Option<Term<S>> {
        self.terms.pop()
    }

    pub(crate) fn from_ascending(terms: Vec<Term<S>>) -> Self {
        Vector { terms }
    }
}
