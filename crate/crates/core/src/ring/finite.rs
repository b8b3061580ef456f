//! Finite-dimensional modules given by a basis and one multiplication
//! operator per ring variable.

use std::collections::{BTreeMap, HashMap};

use crate::linalg::{row_basis, Matrix};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// Sparse vector: `(index, nonzero coefficient)`, indices ascending.
pub type SparseVec<S> = Vec<(usize, S)>;

pub(crate) fn sparsify<S: Scalar>(dense: &[S]) -> SparseVec<S> {
    dense.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn densify<S: Scalar>(v: &SparseVec<S>, n: usize) -> Vec<S> {
    let mut out = vec![S::zero(); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// A linear operator stored by columns: `cols[j]` is the image of basis
/// vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator<S> {
    cols: Vec<SparseVec<S>>,
}

impl<S: Scalar> Operator<S> {
    pub fn new(cols: Vec<SparseVec<S>>) -> Self {
        Operator { cols }
    }

    pub fn column(&self, j: usize) -> &SparseVec<S> {
        &self.cols[j]
    }

    pub fn apply(&self, v: &SparseVec<S>, dim: usize) -> SparseVec<S> {
        let mut acc = vec![S::zero(); dim];
        for (j, c) in v {
            for (i, a) in &self.cols[*j] {
                acc[*i] = acc[*i].clone() + a.clone() * c.clone();
            }
        }
        sparsify(&acc)
    }

    pub fn to_dense(&self, dim: usize) -> Matrix<S> {
        let mut m = Matrix::zeros(dim, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                m[(*i, j)] = c.clone();
            }
        }
        m
    }
}

/// A module of finite length over `k[x_1..x_n]`, given by its operators.
#[derive(Clone, Debug)]
pub struct FiniteLengthModule<S> {
    nvars: usize,
    dim: usize,
    ops: Vec<Operator<S>>,
    degrees: Option<Vec<i64>>,
    labels: Vec<String>,
}

impl<S: Scalar> FiniteLengthModule<S> {
    pub fn new(nvars: usize, ops: Vec<Operator<S>>, degrees: Option<Vec<i64>>, labels: Vec<String>) -> Self {
        let dim = labels.len();
        assert_eq!(ops.len(), nvars);
        assert!(ops.iter().all(|o| o.cols.len() == dim));
        if let Some(d) = &degrees {
            assert_eq!(d.len(), dim);
        }
        FiniteLengthModule { nvars, dim, ops, degrees, labels }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, vec![Operator::new(Vec::new()); nvars], Some(Vec::new()), Vec::new())
    }

    /// The residue field `k`, concentrated in degree 0.
    pub fn residue_field(nvars: usize) -> Self {
        Self::new(nvars, vec![Operator::new(vec![Vec::new()]); nvars], Some(vec![0]), vec!["1".into()])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn op(&self, i: usize) -> &Operator<S> {
        &self.ops[i]
    }

    pub fn degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Shift all degrees by `s`.
    pub fn shifted(&self, s: i64) -> Self {
        let mut out = self.clone();
        if let Some(d) = &mut out.degrees {
            for x in d.iter_mut() {
                *x += s;
            }
        }
        out
    }

    pub fn apply_var(&self, i: usize, v: &SparseVec<S>) -> SparseVec<S> {
        self.ops[i].apply(v, self.dim)
    }

    /// Matrix (by columns) of multiplication by `f`.
    pub fn action(&self, f: &Polynomial<S>) -> Vec<SparseVec<S>> {
        Actor::new(self).action(f)
    }

    /// Whether the operators commute pairwise.
    pub fn operators_commute(&self) -> bool {
        for a in 0..self.nvars {
            for b in a + 1..self.nvars {
                for j in 0..self.dim {
                    let e = vec![(j, S::one())];
                    let ab = self.apply_var(a, &self.apply_var(b, &e));
                    let ba = self.apply_var(b, &self.apply_var(a, &e));
                    if ab != ba {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether every operator satisfies `op^dim = 0`.
    pub fn operators_nilpotent(&self) -> bool {
        (0..self.nvars).all(|i| {
            (0..self.dim).all(|j| {
                let mut v = vec![(j, S::one())];
                for _ in 0..self.dim {
                    v = self.apply_var(i, &v);
                }
                v.is_empty()
            })
        })
    }

    /// Dimension of the socle, the common kernel of all operators.
    pub fn socle_dim(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let stacked: Vec<SparseVec<S>> = (0..self.dim)
            .map(|j| {
                let mut col = Vec::new();
                for (i, op) in self.ops.iter().enumerate() {
                    col.extend(op.cols[j].iter().map(|(r, c)| (i * self.dim + r, c.clone())));
                }
                col
            })
            .collect();
        self.dim - blocked_rank(&stacked, &self.weights_or_zero(), self.nvars * self.dim)
    }

    fn weights_or_zero(&self) -> Vec<i64> {
        self.degrees.clone().unwrap_or_else(|| vec![0; self.dim])
    }

    /// Direct sum of copies, one per entry of `shifts`; copy `i` has its
    /// degrees shifted by `shifts[i]`.
    pub fn direct_sum(parts: &[FiniteLengthModule<S>]) -> Self {
        let nvars = parts.first().map_or(0, |p| p.nvars);
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let mut ops = vec![Vec::with_capacity(dim); nvars];
        let mut labels = Vec::with_capacity(dim);
        let graded = parts.iter().all(|p| p.degrees.is_some());
        let mut degrees = Vec::new();
        let mut offset = 0;
        for (k, p) in parts.iter().enumerate() {
            for (i, op) in p.ops.iter().enumerate() {
                for col in &op.cols {
                    ops[i].push(col.iter().map(|(r, c)| (r + offset, c.clone())).collect());
                }
            }
            labels.extend(p.labels.iter().map(|l| format!("{}@{}", l, k)));
            if let Some(d) = &p.degrees {
                degrees.extend(d.iter().copied());
            }
            offset += p.dim;
        }
        Self::new(nvars, ops.into_iter().map(Operator::new).collect(), graded.then_some(degrees), labels)
    }

    /// Span of `vectors` as a subspace; vectors must span a submodule for the
    /// result to be meaningful.
    pub fn subspace(&self, vectors: Vec<Vec<S>>) -> Subspace<S> {
        Subspace::new(vectors, self.dim)
    }

    /// Submodule spanned by `gens`, closed under the operators.
    pub fn submodule_closure(&self, gens: Vec<Vec<S>>) -> Subspace<S> {
        let mut sub = Subspace::new(gens, self.dim);
        loop {
            let mut more = sub.rows.clone();
            for row in &sub.rows {
                let v = sparsify(row);
                for i in 0..self.nvars {
                    more.push(densify(&self.apply_var(i, &v), self.dim));
                }
            }
            let next = Subspace::new(more, self.dim);
            if next.rank() == sub.rank() {
                return sub;
            }
            sub = next;
        }
    }

    /// The submodule `W` (assumed stable) as a module in its own right, with
    /// the reduced-echelon rows of `W` as basis.
    pub fn restrict(&self, w: &Subspace<S>) -> Self {
        let ops = (0..self.nvars)
            .map(|i| {
                Operator::new(
                    w.rows
                        .iter()
                        .map(|row| {
                            let img = self.apply_var(i, &sparsify(row));
                            w.coordinates(&densify(&img, self.dim))
                        })
                        .collect(),
                )
            })
            .collect();
        let degrees = self.degrees.as_ref().map(|d| w.pivots.iter().map(|&p| d[p]).collect());
        let labels = w.pivots.iter().map(|&p| self.labels[p].clone()).collect();
        Self::new(self.nvars, ops, degrees, labels)
    }

    /// The quotient by a stable subspace, with the non-pivot coordinates as
    /// basis.
    pub fn quotient(&self, w: &Subspace<S>) -> Self {
        let keep: Vec<usize> = (0..self.dim).filter(|c| !w.pivots.contains(c)).collect();
        let mut index = vec![usize::MAX; self.dim];
        for (k, &c) in keep.iter().enumerate() {
            index[c] = k;
        }
        let ops = (0..self.nvars)
            .map(|i| {
                Operator::new(
                    keep.iter()
                        .map(|&c| {
                            let img = densify(&self.ops[i].cols[c], self.dim);
                            let r = w.reduce(img);
                            r.iter()
                                .enumerate()
                                .filter(|(_, x)| !x.is_zero())
                                .map(|(j, x)| (index[j], x.clone()))
                                .collect()
                        })
                        .collect(),
                )
            })
            .collect();
        let degrees = self.degrees.as_ref().map(|d| keep.iter().map(|&c| d[c]).collect());
        let labels = keep.iter().map(|&c| self.labels[c].clone()).collect();
        Self::new(self.nvars, ops, degrees, labels)
    }
}

/// A subspace of `k^n` in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    n: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn new(vectors: Vec<Vec<S>>, n: usize) -> Self {
        let (rows, pivots) = row_basis(vectors, n);
        Subspace { n, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// Remainder of `v` after clearing pivot coordinates.
    pub fn reduce(&self, mut v: Vec<S>) -> Vec<S> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` (assumed in the subspace) in the row basis.
    pub fn coordinates(&self, v: &[S]) -> SparseVec<S> {
        self.pivots.iter().enumerate().filter(|(_, &p)| !v[p].is_zero()).map(|(k, &p)| (k, v[p].clone())).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }
}

/// Rank of a linear map given by sparse columns, computed block by block:
/// columns are grouped by weight, and each group is assumed to map into a
/// set of rows disjoint from the other groups.
pub fn blocked_rank<S: Scalar>(cols: &[SparseVec<S>], weights: &[i64], _nrows: usize) -> usize {
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (j, w) in weights.iter().enumerate() {
        if !cols[j].is_empty() {
            groups.entry(*w).or_default().push(j);
        }
    }
    let mut total = 0;
    for (_, js) in groups {
        let mut rows: Vec<usize> = js.iter().flat_map(|&j| cols[j].iter().map(|(r, _)| *r)).collect();
        rows.sort_unstable();
        rows.dedup();
        let index: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        // fewer rows than columns: transpose for a smaller elimination
        let mut m = Matrix::zeros(js.len(), rows.len());
        for (k, &j) in js.iter().enumerate() {
            for (r, c) in &cols[j] {
                m[(k, index[r])] = c.clone();
            }
        }
        total += m.rank();
    }
    total
}

/// Computes actions of monomials on a finite-length module with memoization.
pub struct Actor<'a, S> {
    module: &'a FiniteLengthModule<S>,
    cache: HashMap<Monomial, Vec<SparseVec<S>>>,
}

impl<'a, S: Scalar> Actor<'a, S> {
    pub fn new(module: &'a FiniteLengthModule<S>) -> Self {
        Actor { module, cache: HashMap::new() }
    }

    fn monomial(&mut self, m: &Monomial) -> Vec<SparseVec<S>> {
        if let Some(v) = self.cache.get(m) {
            return v.clone();
        }
        let res: Vec<SparseVec<S>> = match m.support().next() {
            None => (0..self.module.dim).map(|j| vec![(j, S::one())]).collect(),
            Some(i) => {
                let mut e = m.exponents().to_vec();
                e[i] -= 1;
                let prev = self.monomial(&Monomial::from_exponents(&e));
                prev.iter().map(|v| self.module.apply_var(i, v)).collect()
            }
        };
        self.cache.insert(m.clone(), res.clone());
        res
    }

    /// Matrix columns of multiplication by `f`.
    pub fn action(&mut self, f: &Polynomial<S>) -> Vec<SparseVec<S>> {
        let dim = self.module.dim;
        let mut acc: Vec<Vec<S>> = vec![vec![S::zero(); dim]; dim];
        for (m, c) in f.terms() {
            let cols = self.monomial(m);
            for (j, col) in cols.iter().enumerate() {
                for (i, a) in col {
                    acc[j][*i] = acc[j][*i].clone() + a.clone() * c.clone();
                }
            }
        }
        acc.iter().map(|v| sparsify(v)).collect()
    }
}

/// Columns of the map `N^src -> N^dst` sending `e_s ⊗ b` to
/// `sum_t e_t ⊗ entry(s, t) b`. Coordinates are `(index, basis)` flattened
/// as `index * dim + basis`.
pub fn tensor_map<S: Scalar, F>(n: &FiniteLengthModule<S>, src: usize, dst: usize, entry: F) -> Vec<SparseVec<S>>
where
    F: Fn(usize, usize) -> Polynomial<S>,
{
    let dim = n.dim();
    let mut actor = Actor::new(n);
    let mut cols: Vec<SparseVec<S>> = vec![Vec::new(); src * dim];
    for s in 0..src {
        for t in 0..dst {
            let f = entry(s, t);
            if f.is_zero() {
                continue;
            }
            let act = actor.action(&f);
            for (b, col) in act.into_iter().enumerate() {
                cols[s * dim + b].extend(col.into_iter().map(|(r, c)| (t * dim + r, c)));
            }
        }
    }
    for c in &mut cols {
        c.sort_by_key(|(r, _)| *r);
    }
    cols
}
