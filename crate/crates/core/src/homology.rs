//! Lengths of Hom and Ext from a finitely presented module into a module of
//! finite length.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::linalg::{Echelon, Matrix};
use crate::poly::Polynomial;
use crate::ring::{blocked_rank, finite_weights, tensor_map, FPModule, FiniteLengthModule, QuotientRing, RingError, SparseVec};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("target has {target} variables but the ring has {ring}")]
    VariableCount { target: usize, ring: usize },
}

/// The k-space `Hom_R(M, N)`: each basis element lists the images of the
/// generators of `M`, concatenated.
#[derive(Clone, Debug)]
pub struct HomSpace<S> {
    pub dim: usize,
    pub basis: Vec<Vec<S>>,
}

/// Matrix columns and coordinate weights of the map
/// `Hom(F_{k-1}, N) -> Hom(F_k, N)` induced by `d_k`.
struct HomMap<S> {
    cols: Vec<SparseVec<S>>,
    weights: Vec<i64>,
}

fn hom_map<S: Scalar>(
    res: &[crate::ring::ResolutionLevel<S>],
    k: usize,
    n: &FiniteLengthModule<S>,
    graded: bool,
) -> HomMap<S> {
    let src = &res[k - 1];
    let dst = &res[k];
    let cols = tensor_map(n, src.rank(), dst.rank(), |s, t| dst.columns[t][s].clone());
    let neg: Vec<i64> = src.degrees.iter().map(|d| -d).collect();
    HomMap { cols, weights: finite_weights(n, &neg, graded) }
}

fn check_target<S: Scalar>(m: &FPModule<S>, n: &FiniteLengthModule<S>) -> Result<(), HomologyError> {
    if n.nvars() != m.ring().nvars() {
        return Err(HomologyError::VariableCount { target: n.nvars(), ring: m.ring().nvars() });
    }
    Ok(())
}

/// `ℓ(Hom_R(M, N))`.
pub fn hom_length<S: Scalar>(m: &FPModule<S>, n: &FiniteLengthModule<S>) -> Result<usize, HomologyError> {
    ext_length(0, m, n)
}

/// `ℓ(Ext^i_R(M, N))` from a minimal free resolution of `M`.
pub fn ext_length<S: Scalar>(i: usize, m: &FPModule<S>, n: &FiniteLengthModule<S>) -> Result<usize, HomologyError> {
    Ok(ext_lengths(i, m, n)?[i])
}

/// `ℓ(Ext^j_R(M, N))` for `j = 0..=max`.
pub fn ext_lengths<S: Scalar>(max: usize, m: &FPModule<S>, n: &FiniteLengthModule<S>) -> Result<Vec<usize>, HomologyError> {
    check_target(m, n)?;
    let res = m.resolution(max + 1)?;
    let graded = m.minimal_presentation()?.is_graded();
    let dim = n.dim();
    // ranks[k] = rank of Hom(F_{k-1}, N) -> Hom(F_k, N); ranks[0] = 0
    let mut ranks = vec![0usize; max + 2];
    for (k, rank) in ranks.iter_mut().enumerate().skip(1) {
        if res[k].rank() == 0 || res[k - 1].rank() == 0 || dim == 0 {
            continue;
        }
        let h = hom_map(&res, k, n, graded);
        *rank = blocked_rank(&h.cols, &h.weights, res[k].rank() * dim);
    }
    Ok((0..=max).map(|j| res[j].rank() * dim - ranks[j + 1] - ranks[j]).collect())
}

/// A basis of `Hom_R(M, N)`.
pub fn hom_space<S: Scalar>(m: &FPModule<S>, n: &FiniteLengthModule<S>) -> Result<HomSpace<S>, HomologyError> {
    check_target(m, n)?;
    let res = m.resolution(1)?;
    let dim = n.dim();
    let p = res[0].rank();
    if p == 0 || dim == 0 {
        return Ok(HomSpace { dim: 0, basis: Vec::new() });
    }
    let h = hom_map(&res, 1, n, false);
    let rows = res[1].rank() * dim;
    let mut a = Matrix::zeros(rows, p * dim);
    for (j, col) in h.cols.iter().enumerate() {
        for (r, c) in col {
            a[(*r, j)] = c.clone();
        }
    }
    let basis = a.kernel();
    Ok(HomSpace { dim: basis.len(), basis })
}

/// The dual Hilbert-Samuel value `ℓ(Hom_R(M, R / I^(n+1)))`.
pub fn dual_hs_value<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], n: u32) -> Result<usize, HomologyError> {
    let t = m.ring().truncation(ideal, n + 1)?;
    hom_length(m, &t)
}

/// `ℓ(Ext^i_R(M, R / I^(n+1)))`.
pub fn ext_dual_value<S: Scalar>(i: usize, m: &FPModule<S>, ideal: &[Polynomial<S>], n: u32) -> Result<usize, HomologyError> {
    let t = m.ring().truncation(ideal, n + 1)?;
    ext_length(i, m, &t)
}

/// The submodule `n^i` of an Artinian local ring, `n` the ideal of the
/// variables, as a finite-length module.
pub fn power_of_maximal<S: Scalar>(ring: &QuotientRing<S>, i: u32) -> Result<FiniteLengthModule<S>, RingError> {
    let s = ring.as_finite_module()?;
    let degrees_hint = s.degrees().map(|d| d.to_vec());
    let gens: Vec<Vec<S>> = match &degrees_hint {
        Some(d) => d
            .iter()
            .enumerate()
            .filter(|(_, &e)| e >= i as i64)
            .map(|(k, _)| {
                let mut v = vec![S::zero(); s.dim()];
                v[k] = S::one();
                v
            })
            .collect(),
        None => {
            // span of monomials of degree i applied to 1, closed under the ring
            let one = unit_vector(&s);
            let mut vs = vec![one];
            for _ in 0..i {
                let mut next = Vec::new();
                for v in &vs {
                    for x in 0..s.nvars() {
                        next.push(dense(&s.apply_var(x, &crate::ring::SparseVec::from(sparse(v))), s.dim()));
                    }
                }
                vs = next;
            }
            vs
        }
    };
    let sub = s.submodule_closure(gens);
    Ok(s.restrict(&sub))
}

fn unit_vector<S: Scalar>(s: &FiniteLengthModule<S>) -> Vec<S> {
    let k = s.labels().iter().position(|l| l == "1").expect("algebra basis contains 1");
    let mut v = vec![S::zero(); s.dim()];
    v[k] = S::one();
    v
}

fn sparse<S: Scalar>(v: &[S]) -> Vec<(usize, S)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn dense<S: Scalar>(v: &[(usize, S)], n: usize) -> Vec<S> {
    let mut out = vec![S::zero(); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// First Bass number of `n^i`: `dim_k Ext^1_S(k, n^i)` over an Artinian
/// local ring `S`.
pub fn bass_mu1<S: Scalar>(ring: &QuotientRing<S>, i: u32) -> Result<usize, HomologyError> {
    let target = power_of_maximal(ring, i)?;
    if target.dim() == 0 {
        return Ok(0);
    }
    ext_length(1, &FPModule::residue_field(ring), &target)
}

/// Whether the map `Ext^i(M, N) -> Ext^i(M, N')` induced by the module map
/// `phi : N -> N'` is injective. `phi` is given by columns (images of the
/// basis of `N`) and raises degrees by `shift` when both modules are graded.
pub fn ext_map_injective<S: Scalar>(
    i: usize,
    m: &FPModule<S>,
    n: &FiniteLengthModule<S>,
    n2: &FiniteLengthModule<S>,
    phi: &[SparseVec<S>],
    shift: i64,
) -> Result<bool, HomologyError> {
    check_target(m, n)?;
    check_target(m, n2)?;
    let res = m.resolution(i + 1)?;
    let graded = m.minimal_presentation()?.is_graded() && n.degrees().is_some() && n2.degrees().is_some();
    let beta = res[i].rank();
    let (d1, d2) = (n.dim(), n2.dim());
    if beta == 0 || d1 == 0 {
        return Ok(true);
    }
    let empty = |len: usize| HomMap::<S> { cols: vec![Vec::new(); len], weights: vec![0; len] };
    // cocycles of N: kernel of the next map
    let next = if res[i + 1].rank() > 0 { hom_map(&res, i + 1, n, graded) } else { empty(beta * d1) };
    // coboundaries of N and N'
    let prev = if i > 0 && res[i - 1].rank() > 0 { Some(hom_map(&res, i, n, graded)) } else { None };
    let prev2 = if i > 0 && res[i - 1].rank() > 0 && d2 > 0 { Some(hom_map(&res, i, n2, graded)) } else { None };
    let neg: Vec<i64> = res[i].degrees.iter().map(|d| -d).collect();
    let w_here = finite_weights(n, &neg, graded);
    let w_there = finite_weights(n2, &neg, graded);
    let shift = if graded { shift } else { 0 };

    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (c, w) in w_here.iter().enumerate() {
        by_weight.entry(*w).or_default().push(c);
    }
    for (w, coords) in by_weight {
        // kernel of the next map restricted to this weight
        let mut rows: Vec<usize> = coords.iter().flat_map(|&c| next.cols[c].iter().map(|(r, _)| *r)).collect();
        rows.sort_unstable();
        rows.dedup();
        let rindex: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let mut a = Matrix::zeros(rows.len(), coords.len());
        for (k, &c) in coords.iter().enumerate() {
            for (r, x) in &next.cols[c] {
                a[(rindex[r], k)] = x.clone();
            }
        }
        let z: Vec<Vec<S>> = if rows.is_empty() {
            (0..coords.len()).map(|k| (0..coords.len()).map(|j| if j == k { S::one() } else { S::zero() }).collect()).collect()
        } else {
            a.kernel()
        };
        let b_rank = match &prev {
            None => 0,
            Some(h) => {
                let sel: Vec<SparseVec<S>> =
                    h.weights.iter().enumerate().filter(|(_, &x)| x == w).map(|(c, _)| h.cols[c].clone()).collect();
                let ws = vec![0; sel.len()];
                blocked_rank(&sel, &ws, beta * d1)
            }
        };
        let ext_dim = z.len() - b_rank;
        if ext_dim == 0 {
            continue;
        }
        // images of cocycles in Hom(F_i, N'), modulo coboundaries of N'
        let target_coords: Vec<usize> = (0..beta * d2).filter(|&c| w_there[c] == w + shift).collect();
        let tindex: HashMap<usize, usize> = target_coords.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut ech = Echelon::new(target_coords.len());
        if let Some(h) = &prev2 {
            for (c, col) in h.cols.iter().enumerate() {
                if h.weights[c] != w + shift || col.is_empty() {
                    continue;
                }
                let mut v = vec![S::zero(); target_coords.len()];
                for (r, x) in col {
                    v[tindex[r]] = x.clone();
                }
                ech.insert(v);
            }
        }
        let base = ech.rank();
        for zv in &z {
            let mut v = vec![S::zero(); target_coords.len()];
            for (k, x) in zv.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let c = coords[k];
                let (g, b) = (c / d1, c % d1);
                for (r, y) in &phi[b] {
                    let t = g * d2 + r;
                    let Some(&ti) = tindex.get(&t) else {
                        return Ok(false);
                    };
                    v[ti] = v[ti].clone() + x.clone() * y.clone();
                }
            }
            ech.insert(v);
        }
        if ech.rank() - base != ext_dim {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PolyRing};
    use crate::scalar::{Fp, Rational};

    type F = Fp<32003>;

    fn ring<S: Scalar>(vars: &[&str], rels: &[&str]) -> QuotientRing<S> {
        let p = PolyRing::with_vars(vars, MonomialOrder::Grevlex).unwrap();
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

    fn hom_values<S: Scalar>() {
        let (r, m) = example_module::<S>();
        let vars = r.poly().vars();
        let k = r.truncation(&vars, 1).unwrap();
        assert_eq!(hom_length(&m, &k).unwrap(), 2);
        assert_eq!(dual_hs_value(&m, &vars, 0).unwrap(), 2);
        assert_eq!(dual_hs_value(&m, &vars, 3).unwrap(), 8);
        let t = r.truncation(&vars, 3).unwrap();
        assert_eq!(hom_length(&FPModule::free(&r, 3), &t).unwrap(), 3 * t.dim());
        let h = hom_space(&m, &t).unwrap();
        assert_eq!(h.dim, hom_length(&m, &t).unwrap());
    }

    #[test]
    fn hom_lengths() {
        hom_values::<Rational>();
        hom_values::<F>();
        let s = ring::<Rational>(&["x", "y"], &["x^2", "y^2"]);
        let sf = s.as_finite_module().unwrap();
        assert_eq!(hom_length(&FPModule::residue_field(&s), &sf).unwrap(), 1);
    }

    #[test]
    fn dual_values_over_polynomial_ring() {
        let r = ring::<Rational>(&["x", "y"], &[]);
        let vars = r.poly().vars();
        let free = FPModule::free(&r, 1);
        let values: Vec<usize> = (0..4).map(|n| dual_hs_value(&free, &vars, n).unwrap()).collect();
        assert_eq!(values, vec![1, 3, 6, 10]);
        for n in 0..3 {
            assert_eq!(ext_dual_value(1, &free, &vars, n).unwrap(), 0);
        }
    }

    #[test]
    fn ext_lengths_small() {
        let s = ring::<Rational>(&["x", "y"], &["x^2", "y^2"]);
        let k = FPModule::residue_field(&s);
        let kf = s.truncation(&s.poly().vars(), 1).unwrap();
        // m·k = 0, so the Hom complex has zero differentials
        assert_eq!(ext_lengths(3, &k, &kf).unwrap(), vec![1, 2, 3, 4]);
        let sf = s.as_finite_module().unwrap();
        // S is self-injective
        assert_eq!(ext_lengths(2, &k, &sf).unwrap(), vec![1, 0, 0]);
        let free = FPModule::free(&s, 2);
        assert_eq!(ext_lengths(2, &free, &kf).unwrap(), vec![2, 0, 0]);
    }

    #[test]
    fn ext_vanishes_for_mcm_over_parameter_ideal() {
        let (r, m) = example_module::<F>();
        let j = vec![r.poly().var(0)];
        for n in 0..4 {
            assert_eq!(ext_dual_value(1, &m, &j, n).unwrap(), 0);
        }
    }

    #[test]
    fn additivity() {
        let (r, m) = example_module::<F>();
        let k = FPModule::residue_field(&r);
        let sum = FPModule::direct_sum(&m, &k).unwrap();
        let t = r.truncation(&r.poly().vars(), 3).unwrap();
        let a = ext_lengths(2, &m, &t).unwrap();
        let b = ext_lengths(2, &k, &t).unwrap();
        let c = ext_lengths(2, &sum, &t).unwrap();
        for i in 0..3 {
            assert_eq!(c[i], a[i] + b[i]);
        }
    }

    #[test]
    fn matlis_duality() {
        let s = ring::<Rational>(&["x", "y"], &["x^2", "y^2"]);
        let sf = s.as_finite_module().unwrap();
        let x = s.poly().var(0);
        let y = s.poly().var(1);
        let tests = vec![
            FPModule::residue_field(&s),
            FPModule::cyclic(&s, std::slice::from_ref(&x)).unwrap(),
            FPModule::cyclic(&s, &[x.clone(), y.clone()]).unwrap(),
            FPModule::ideal(&s, &[x, y]).unwrap(),
            FPModule::free(&s, 2),
        ];
        for n in tests {
            let len = n.to_finite().unwrap().dim();
            assert_eq!(hom_length(&n, &sf).unwrap(), len);
        }
    }

    #[test]
    fn bass_numbers() {
        let s = ring::<Rational>(&["x", "y"], &["x^2", "y^2"]);
        assert_eq!(bass_mu1(&s, 1).unwrap(), 1);
        assert_eq!(bass_mu1(&s, 2).unwrap(), 2);
        assert_eq!(bass_mu1(&s, 3).unwrap(), 0);
        let u = ring::<F>(&["u"], &["u^2"]);
        assert_eq!(bass_mu1(&u, 1).unwrap(), 1);
    }

    #[test]
    fn induced_maps() {
        let r = ring::<Rational>(&["x", "y"], &[]);
        let vars = r.poly().vars();
        let x = r.poly().var(0);
        let free = FPModule::free(&r, 1);
        let t2 = r.truncation(&vars, 2).unwrap();
        let t3 = r.truncation(&vars, 3).unwrap();
        let up = r.truncation_map(&vars, 2, 3, &x).unwrap();
        assert!(ext_map_injective(0, &free, &t2, &t3, &up, 1).unwrap());
        let same = r.truncation_map(&vars, 2, 2, &x).unwrap();
        assert!(!ext_map_injective(0, &free, &t2, &t2, &same, 1).unwrap());
        // socles: x embeds (x, y) of R/m^2 into m^2 of R/m^3, but kills it in R/m^2
        let k = FPModule::residue_field(&r);
        assert!(ext_map_injective(0, &k, &t2, &t3, &up, 1).unwrap());
        assert!(!ext_map_injective(0, &k, &t2, &t2, &same, 1).unwrap());
    }
}
