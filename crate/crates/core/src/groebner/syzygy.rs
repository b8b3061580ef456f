use super::buchberger::module_groebner_vectors;
use super::vector::Vector;
use super::GroebnerBasis;
use crate::poly::{PolyRing, Polynomial};
use crate::scalar::Scalar;

/// Generators of the syzygies over `P/J` of the columns of a matrix with
/// `rows` rows, i.e. of `{v : A v ∈ J P^rows}` modulo `J`.
///
/// Computed by elimination: a basis of the module spanned by `(a_j, e_j)`
/// and `J e_i` in `P^(rows + cols)`, under position-over-term order with the
/// `A`-block first, contains generators of the syzygies as its elements with
/// vanishing top block.
pub fn syzygy_matrix<S: Scalar>(
    ring: &PolyRing<S>,
    rows: usize,
    cols: &[Vec<Polynomial<S>>],
    j: &GroebnerBasis<S>,
) -> Vec<Vec<Polynomial<S>>> {
    let q = cols.len();
    if q == 0 {
        return Vec::new();
    }
    let order = ring.order();
    let jgens = if j.is_empty() { Vec::new() } else { j.polys() };
    let mut input = Vec::with_capacity(q + (rows + q) * jgens.len());
    for (k, col) in cols.iter().enumerate() {
        assert_eq!(col.len(), rows, "column of wrong length");
        let mut v = Vector::from_polys(col, order);
        v = v.add(&Vector::from_polys_at(std::slice::from_ref(&ring.one()), rows + k, order), order);
        input.push(v);
    }
    for f in &jgens {
        for pos in 0..rows + q {
            input.push(Vector::from_polys_at(std::slice::from_ref(f), pos, order));
        }
    }
    let gb = module_groebner_vectors(ring, rows + q, input);
    let mut out: Vec<Vec<Polynomial<S>>> = Vec::new();
    for v in gb.elements() {
        if v.lead().unwrap().pos < rows {
            continue;
        }
        let polys = v.to_polys(rows + q);
        let col: Vec<Polynomial<S>> = polys[rows..].iter().map(|f| if j.is_empty() { f.clone() } else { j.reduce_poly(f) }).collect();
        if col.iter().all(|f| f.is_zero()) || out.contains(&col) {
            continue;
        }
        out.push(col);
    }
    out
}
