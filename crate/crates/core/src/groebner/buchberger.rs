use std::cmp::Ordering;

use super::vector::{pot_compare, Vector};
use super::GroebnerBasis;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::scalar::Scalar;

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<S: Scalar>(ring: &PolyRing<S>, gens: &[Polynomial<S>]) -> GroebnerBasis<S> {
    let order = ring.order();
    let input = gens.iter().map(|g| Vector::from_polys(std::slice::from_ref(g), order)).collect();
    compute(ring, 1, input)
}

/// Reduced Gröbner basis of the submodule of `P^rank` spanned by `cols`.
pub fn module_groebner<S: Scalar>(ring: &PolyRing<S>, rank: usize, cols: &[Vec<Polynomial<S>>]) -> GroebnerBasis<S> {
    let order = ring.order();
    let input = cols.iter().map(|c| Vector::from_polys(c, order)).collect();
    compute(ring, rank, input)
}

pub(crate) fn module_groebner_vectors<S: Scalar>(ring: &PolyRing<S>, rank: usize, input: Vec<Vector<S>>) -> GroebnerBasis<S> {
    compute(ring, rank, input)
}

struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<S> {
    order: MonomialOrder,
    ideal: bool,
    basis: Vec<Vector<S>>,
    sugar: Vec<u32>,
    live: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<S: Scalar> State<S> {
    fn lead(&self, i: usize) -> (usize, &Monomial) {
        let t = self.basis[i].lead().unwrap();
        (t.pos, &t.mon)
    }

    /// Full reduction against the live elements.
    fn reduce(&self, mut f: Vector<S>) -> Vector<S> {
        let mut rem = Vec::new();
        'outer: while let Some(t) = f.lead() {
            for (k, g) in self.basis.iter().enumerate() {
                if !self.live[k] {
                    continue;
                }
                let lt = g.lead().unwrap();
                if lt.pos == t.pos && lt.mon.divides(&t.mon) {
                    let q = lt.mon.quotient_of(&t.mon);
                    let c = t.coef.clone() / lt.coef.clone();
                    f = f.sub_mul(&c, &q, g, self.order);
                    continue 'outer;
                }
            }
            rem.push(f.pop_lead().unwrap());
        }
        rem.reverse();
        Vector::from_ascending(rem)
    }

    /// Gebauer-Möller installation of a new basis element.
    fn insert(&mut self, h: Vector<S>, hsugar: u32) {
        // reduction in other positions can raise the degree past the sugar
        let hsugar = hsugar.max(h.max_degree());
        let k = self.basis.len();
        let (hpos, hmon) = {
            let t = h.lead().unwrap();
            (t.pos, t.mon.clone())
        };
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for g in 0..k {
            if !self.live[g] {
                continue;
            }
            let (gpos, gmon) = self.lead(g);
            if gpos != hpos {
                continue;
            }
            let coprime = self.ideal && gmon.coprime(&hmon);
            cands.push((g, gmon.lcm(&hmon), coprime));
        }
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for idx in 0..cands.len() {
            let (g, ref l, coprime) = cands[idx];
            let dominated = cands[idx + 1..].iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(l));
            if coprime || !dominated {
                kept.push((g, l.clone(), coprime));
            }
        }
        self.pairs.retain(|p| {
            if p.pos != hpos || !hmon.divides(&p.lcm) {
                return true;
            }
            let li = self.basis[p.i].lead().unwrap().mon.lcm(&hmon);
            let lj = self.basis[p.j].lead().unwrap().mon.lcm(&hmon);
            li == p.lcm || lj == p.lcm
        });
        for (g, l, coprime) in kept {
            if !coprime {
                let gdeg = self.basis[g].lead().unwrap().mon.degree();
                let sugar = (self.sugar[g] - gdeg).max(hsugar - hmon.degree()) + l.degree();
                self.pairs.push(Pair { i: g, j: k, pos: hpos, lcm: l, sugar });
            }
        }
        for g in 0..k {
            if self.live[g] {
                let (gpos, gmon) = self.lead(g);
                if gpos == hpos && hmon.divides(gmon) {
                    self.live[g] = false;
                }
            }
        }
        self.basis.push(h);
        self.sugar.push(hsugar);
        self.live.push(true);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar.cmp(&b.sugar).then_with(|| pot_compare(order, (a.pos, &a.lcm), (b.pos, &b.lcm)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_vector(&self, p: &Pair) -> Vector<S> {
        let (gi, gj) = (&self.basis[p.i], &self.basis[p.j]);
        let qi = gi.lead().unwrap().mon.quotient_of(&p.lcm);
        let qj = gj.lead().unwrap().mon.quotient_of(&p.lcm);
        let ci = gi.lead().unwrap().coef.clone();
        let cj = gj.lead().unwrap().coef.clone();
        gi.mul_monomial(&qi).sub_mul(&(ci / cj), &qj, gj, self.order)
    }
}

fn compute<S: Scalar>(ring: &PolyRing<S>, rank: usize, input: Vec<Vector<S>>) -> GroebnerBasis<S> {
    let order = ring.order();
    let mut st = State { order, ideal: rank == 1, basis: Vec::new(), sugar: Vec::new(), live: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<Vector<S>> = input.into_iter().filter(|v| !v.is_zero()).collect();
    // smaller leading terms first keeps intermediate bases small
    input.sort_by(|a, b| {
        let (ta, tb) = (a.lead().unwrap(), b.lead().unwrap());
        ta.mon.degree().cmp(&tb.mon.degree()).then_with(|| pot_compare(order, (ta.pos, &ta.mon), (tb.pos, &tb.mon)))
    });
    for v in input {
        let sugar = v.max_degree();
        let mut h = st.reduce(v);
        if !h.is_zero() {
            h.make_monic();
            st.insert(h, sugar);
        }
    }
    while let Some(p) = st.next_pair() {
        let s = st.s_vector(&p);
        let mut h = st.reduce(s);
        if !h.is_zero() {
            h.make_monic();
            st.insert(h, p.sugar);
        }
    }
    let minimal: Vec<Vector<S>> =
        st.basis.into_iter().zip(st.live).filter(|(_, live)| *live).map(|(v, _)| v).collect();
    let tmp = GroebnerBasis::from_reduced(ring, rank, minimal.clone());
    let mut reduced: Vec<Vector<S>> = minimal
        .iter()
        .map(|v| {
            let mut v = v.clone();
            let lead = v.pop_lead().unwrap();
            let mut tail = tmp.reduce(&v);
            tail = tail.add(&Vector::from_ascending(vec![lead]), order);
            tail.make_monic();
            tail
        })
        .collect();
    reduced.sort_by(|a, b| {
        let (ta, tb) = (a.lead().unwrap(), b.lead().unwrap());
        pot_compare(order, (ta.pos, &ta.mon), (tb.pos, &tb.mon))
    });
    debug_assert!(reduced.windows(2).all(|w| {
        let (a, b) = (w[0].lead().unwrap(), w[1].lead().unwrap());
        pot_compare(order, (a.pos, &a.mon), (b.pos, &b.mon)) == Ordering::Less
    }));
    GroebnerBasis::from_reduced(ring, rank, reduced)
}
