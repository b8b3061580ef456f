//! Gröbner bases of ideals and of submodules of free modules, with
//! position-over-term order for the module case.

mod buchberger;
mod syzygy;
#[cfg(test)]
mod tests;
mod vector;

pub use buchberger::{buchberger, module_groebner};
pub use syzygy::syzygy_matrix;
pub use vector::{pot_compare, Term, Vector};

use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::scalar::Scalar;

/// A reduced Gröbner basis of a submodule of `P^rank` (an ideal when
/// `rank == 1`). Elements are monic and sorted by leading term, ascending.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<S> {
    ring: PolyRing<S>,
    rank: usize,
    elems: Vec<Vector<S>>,
}

impl<S: Scalar> PartialEq for GroebnerBasis<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rank == other.rank && self.elems == other.elems
    }
}

impl<S: Scalar> Eq for GroebnerBasis<S> {}

impl<S: Scalar> GroebnerBasis<S> {
    /// The zero submodule.
    pub fn empty(ring: &PolyRing<S>, rank: usize) -> Self {
        GroebnerBasis { ring: ring.clone(), rank, elems: Vec::new() }
    }

    pub(crate) fn from_reduced(ring: &PolyRing<S>, rank: usize, elems: Vec<Vector<S>>) -> Self {
        GroebnerBasis { ring: ring.clone(), rank, elems }
    }

    pub fn ring(&self) -> &PolyRing<S> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[Vector<S>] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Ideal generators (rank 1 only).
    pub fn polys(&self) -> Vec<Polynomial<S>> {
        assert_eq!(self.rank, 1, "polys() on a module basis");
        self.elems.iter().map(|v| v.to_polys(1).pop().unwrap()).collect()
    }

    /// Columns as polynomial vectors.
    pub fn columns(&self) -> Vec<Vec<Polynomial<S>>> {
        self.elems.iter().map(|v| v.to_polys(self.rank)).collect()
    }

    /// Leading monomials of the elements whose leading position is `pos`.
    pub fn leading_monomials(&self, pos: usize) -> Vec<Monomial> {
        self.elems.iter().filter_map(|v| v.lead()).filter(|t| t.pos == pos).map(|t| t.mon.clone()).collect()
    }

    /// Whether the basis contains a unit vector at every position, i.e.
    /// generates the whole free module.
    pub fn is_whole_module(&self) -> bool {
        (0..self.rank).all(|p| self.leading_monomials(p).iter().any(|m| m.is_one()))
    }

    fn reducer(&self, pos: usize, mon: &Monomial) -> Option<&Vector<S>> {
        self.elems.iter().find(|g| {
            let t = g.lead().unwrap();
            t.pos == pos && t.mon.divides(mon)
        })
    }

    /// Full normal form: no term of the result is divisible by a leading
    /// term of the basis.
    pub fn reduce(&self, v: &Vector<S>) -> Vector<S> {
        let order = self.ring.order();
        let mut f = v.clone();
        let mut rem = Vec::new();
        while let Some(t) = f.lead() {
            match self.reducer(t.pos, &t.mon) {
                Some(g) => {
                    let lt = g.lead().unwrap();
                    let q = lt.mon.quotient_of(&t.mon);
                    let c = t.coef.clone() / lt.coef.clone();
                    f = f.sub_mul(&c, &q, g, order);
                }
                None => rem.push(f.pop_lead().unwrap()),
            }
        }
        rem.reverse();
        Vector::from_ascending(rem)
    }

    pub fn reduce_column(&self, col: &[Polynomial<S>]) -> Vec<Polynomial<S>> {
        self.reduce(&Vector::from_polys(col, self.ring.order())).to_polys(self.rank)
    }

    pub fn contains_column(&self, col: &[Polynomial<S>]) -> bool {
        self.reduce(&Vector::from_polys(col, self.ring.order())).is_zero()
    }

    /// Normal form of a polynomial modulo an ideal basis.
    pub fn reduce_poly(&self, f: &Polynomial<S>) -> Polynomial<S> {
        debug_assert_eq!(self.rank, 1);
        self.reduce(&Vector::from_polys(std::slice::from_ref(f), self.ring.order())).to_polys(1).pop().unwrap()
    }

    pub fn contains(&self, f: &Polynomial<S>) -> bool {
        self.reduce_poly(f).is_zero()
    }

    /// Whether every generator of `other` lies in this submodule.
    pub fn contains_all(&self, other: &GroebnerBasis<S>) -> bool {
        other.elems.iter().all(|v| self.reduce(v).is_zero())
    }
}

/// Normal form of `f` modulo the ideal with basis `g`.
pub fn normal_form<S: Scalar>(f: &Polynomial<S>, g: &GroebnerBasis<S>) -> Polynomial<S> {
    g.reduce_poly(f)
}

/// All `n`-fold products of the generators; `n = 0` gives the unit ideal.
pub fn ideal_power<S: Scalar>(ring: &PolyRing<S>, gens: &[Polynomial<S>], n: u32) -> Vec<Polynomial<S>> {
    let gens: Vec<&Polynomial<S>> = gens.iter().filter(|g| !g.is_zero()).collect();
    // products with nondecreasing factor indices, tagged by the last index
    let mut level: Vec<(usize, Polynomial<S>)> = vec![(0, ring.one())];
    for _ in 0..n {
        let mut next = Vec::new();
        for (start, p) in &level {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((i, ring.mul(p, g)));
            }
        }
        level = next;
    }
    level.into_iter().map(|(_, p)| p).collect()
}

/// Products `f * g` over all pairs.
pub fn ideal_product<S: Scalar>(ring: &PolyRing<S>, a: &[Polynomial<S>], b: &[Polynomial<S>]) -> Vec<Polynomial<S>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for f in a {
        for g in b {
            let p = ring.mul(f, g);
            if !p.is_zero() {
                out.push(p);
            }
        }
    }
    out
}
