use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::finite::{blocked_rank, tensor_map, FiniteLengthModule, Subspace};
use super::hilbert::{add, hilbert_numerator, HilbertSeries};
use super::quotient::{random_linear_forms, standard_monomials, QuotientRing, CM_DRAWS};
use super::RingError;
use crate::groebner::{module_groebner, syzygy_matrix};
use crate::linalg::Echelon;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::scalar::Scalar;

/// Seed for the random parameter systems of the Cohen-Macaulay test.
const CM_SEED: u64 = 0xc0de;

/// One step of a free resolution: generator degrees of `F_k` and the columns
/// of `d_k : F_k -> F_{k-1}` (empty for `k = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionLevel<S> {
    pub degrees: Vec<i64>,
    pub columns: Vec<Vec<Polynomial<S>>>,
}

impl<S> ResolutionLevel<S> {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }
}

/// A finitely presented module `coker(A)` with `A : R^q -> R^p` given by its
/// `q` columns of length `p`.
#[derive(Clone)]
pub struct FPModule<S> {
    ring: QuotientRing<S>,
    degrees: Vec<i64>,
    columns: Vec<Vec<Polynomial<S>>>,
    graded: bool,
    minimal: bool,
    resolution: Arc<Mutex<Vec<ResolutionLevel<S>>>>,
}

impl<S: Scalar> std::fmt::Debug for FPModule<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let poly = self.ring.poly();
        let cols: Vec<Vec<String>> = self.columns.iter().map(|c| c.iter().map(|e| poly.format(e)).collect()).collect();
        f.debug_struct("FPModule").field("degrees", &self.degrees).field("columns", &cols).finish()
    }
}

/// Degree of a column whose entries sit in positions of the given degrees;
/// `None` when the column is zero or not homogeneous.
pub fn column_degree<S: Scalar>(col: &[Polynomial<S>], degrees: &[i64]) -> Option<i64> {
    let mut deg = None;
    for (f, d) in col.iter().zip(degrees) {
        if f.is_zero() {
            continue;
        }
        if !f.is_homogeneous() {
            return None;
        }
        let e = f.total_degree().unwrap() as i64 + d;
        match deg {
            None => deg = Some(e),
            Some(x) if x != e => return None,
            _ => {}
        }
    }
    deg
}

impl<S: Scalar> FPModule<S> {
    /// `coker` of the matrix with the given columns; generators sit in the
    /// given degrees.
    pub fn cokernel(ring: &QuotientRing<S>, degrees: Vec<i64>, columns: Vec<Vec<Polynomial<S>>>) -> Result<Self, RingError> {
        let p = degrees.len();
        let mut cols = Vec::with_capacity(columns.len());
        for c in columns {
            if c.len() != p {
                return Err(RingError::Shape(format!("column of length {} for {} generators", c.len(), p)));
            }
            let c: Vec<Polynomial<S>> = c.iter().map(|f| ring.reduce(f)).collect();
            if c.iter().any(|f| !f.is_zero()) {
                cols.push(c);
            }
        }
        let graded = ring.is_graded() && cols.iter().all(|c| column_degree(c, &degrees).is_some());
        Ok(FPModule {
            ring: ring.clone(),
            degrees,
            columns: cols,
            graded,
            minimal: false,
            resolution: Arc::new(Mutex::new(Vec::new())),
        })
    }

    /// `M ⊗ R'` for a quotient `R'` of the ring over the same polynomial ring.
    pub fn base_change(&self, ring: &QuotientRing<S>) -> Result<Self, RingError> {
        if ring.poly() != self.ring.poly() {
            return Err(RingError::RingMismatch);
        }
        Self::cokernel(ring, self.degrees.clone(), self.columns.clone())
    }

    /// `R^rank` generated in degree 0.
    pub fn free(ring: &QuotientRing<S>, rank: usize) -> Self {
        Self::free_with_degrees(ring, vec![0; rank])
    }

    pub fn free_with_degrees(ring: &QuotientRing<S>, degrees: Vec<i64>) -> Self {
        let mut m = Self::cokernel(ring, degrees, Vec::new()).expect("no columns");
        m.minimal = true;
        m
    }

    /// `R / (gens)`.
    pub fn cyclic(ring: &QuotientRing<S>, gens: &[Polynomial<S>]) -> Result<Self, RingError> {
        Self::cokernel(ring, vec![0], gens.iter().map(|g| vec![g.clone()]).collect())
    }

    /// The residue field `R / (x_1..x_n)`.
    pub fn residue_field(ring: &QuotientRing<S>) -> Self {
        Self::cyclic(ring, &ring.poly().vars()).expect("well-formed")
    }

    /// The submodule of `R^k` (positions in degree 0) spanned by `gens`.
    pub fn submodule(ring: &QuotientRing<S>, gens: &[Vec<Polynomial<S>>]) -> Result<Self, RingError> {
        let k = gens.first().map_or(0, |g| g.len());
        Self::submodule_with_degrees(ring, &vec![0; k], gens)
    }

    /// The submodule of `R^k` spanned by `gens`, position `i` in degree
    /// `ambient[i]`. Generator `j` becomes basis vector `j`.
    pub fn submodule_with_degrees(
        ring: &QuotientRing<S>,
        ambient: &[i64],
        gens: &[Vec<Polynomial<S>>],
    ) -> Result<Self, RingError> {
        if gens.is_empty() {
            return Self::cokernel(ring, Vec::new(), Vec::new());
        }
        let k = ambient.len();
        let gens: Vec<Vec<Polynomial<S>>> = gens.iter().map(|g| g.iter().map(|f| ring.reduce(f)).collect()).collect();
        if gens.iter().any(|g| g.len() != k) {
            return Err(RingError::Shape("generators of different lengths".into()));
        }
        let degrees: Vec<i64> = gens.iter().map(|g| column_degree(g, ambient).unwrap_or(0)).collect();
        let syz = syzygy_matrix(ring.poly(), k, &gens, ring.ideal());
        let mut m = Self::cokernel(ring, degrees, syz)?;
        m.graded = m.graded && gens.iter().all(|g| g.iter().all(|f| f.is_zero()) || column_degree(g, ambient).is_some());
        Ok(m)
    }

    /// The ideal `(gens)` as a module.
    pub fn ideal(ring: &QuotientRing<S>, gens: &[Polynomial<S>]) -> Result<Self, RingError> {
        let cols: Vec<Vec<Polynomial<S>>> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::submodule(ring, &cols)
    }

    pub fn direct_sum(a: &Self, b: &Self) -> Result<Self, RingError> {
        if a.ring != b.ring {
            return Err(RingError::RingMismatch);
        }
        let (p, q) = (a.rank0(), b.rank0());
        let poly = a.ring.poly();
        let mut cols = Vec::new();
        for c in &a.columns {
            let mut v = c.clone();
            v.extend((0..q).map(|_| poly.zero()));
            cols.push(v);
        }
        for c in &b.columns {
            let mut v: Vec<Polynomial<S>> = (0..p).map(|_| poly.zero()).collect();
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        let mut degrees = a.degrees.clone();
        degrees.extend(&b.degrees);
        let mut m = Self::cokernel(&a.ring, degrees, cols)?;
        m.graded = a.graded && b.graded;
        Ok(m)
    }

    pub fn ring(&self) -> &QuotientRing<S> {
        &self.ring
    }

    /// Number of generators of the presentation.
    pub fn rank0(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn columns(&self) -> &[Vec<Polynomial<S>>] {
        &self.columns
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn is_free(&self) -> Result<bool, RingError> {
        Ok(self.minimal_presentation()?.columns.is_empty())
    }

    /// Degrees of the columns (0 for an ungraded module).
    pub fn column_degrees(&self) -> Vec<i64> {
        self.columns.iter().map(|c| if self.graded { column_degree(c, &self.degrees).unwrap_or(0) } else { 0 }).collect()
    }

    fn check_supported(&self) -> Result<(), RingError> {
        self.ring.check_supported()?;
        if !self.graded && !self.ring.is_artinian() {
            return Err(RingError::NotGraded);
        }
        Ok(())
    }

    /// An isomorphic module whose presentation has no unit entries and a
    /// minimal set of relations; `rank0` of the result is `μ(M)`.
    pub fn minimal_presentation(&self) -> Result<Self, RingError> {
        if self.minimal {
            return Ok(self.clone());
        }
        self.check_supported()?;
        let poly = self.ring.poly();
        let mut degrees = self.degrees.clone();
        let mut cols = self.columns.clone();
        while let Some((l, k)) = find_unit(&self.ring, &cols) {
            let uinv = self.ring.inverse(&cols[l][k]).expect("unit");
            let pivot_col = cols[l].clone();
            let mut next = Vec::with_capacity(cols.len() - 1);
            for (j, col) in cols.iter().enumerate() {
                if j == l {
                    continue;
                }
                let factor = self.ring.mul(&uinv, &col[k]);
                let mut new_col = Vec::with_capacity(col.len() - 1);
                for (i, f) in col.iter().enumerate() {
                    if i == k {
                        continue;
                    }
                    let g = if factor.is_zero() { f.clone() } else { poly.sub(f, &self.ring.mul(&pivot_col[i], &factor)) };
                    new_col.push(self.ring.reduce(&g));
                }
                if new_col.iter().any(|f| !f.is_zero()) {
                    next.push(new_col);
                }
            }
            degrees.remove(k);
            cols = next;
        }
        let keep = minimal_subset(&self.ring, &degrees, &cols, self.graded);
        let cols: Vec<Vec<Polynomial<S>>> = keep.into_iter().map(|j| cols[j].clone()).collect();
        let mut m = Self::cokernel(&self.ring, degrees, cols)?;
        m.graded = self.graded;
        m.minimal = true;
        Ok(m)
    }

    /// `μ(M)`, the minimal number of generators.
    pub fn num_generators(&self) -> Result<usize, RingError> {
        Ok(self.minimal_presentation()?.rank0())
    }

    /// The first `depth + 1` levels `F_0 .. F_depth` of a minimal free
    /// resolution; computed levels are cached.
    pub fn resolution(&self, depth: usize) -> Result<Vec<ResolutionLevel<S>>, RingError> {
        let min = self.minimal_presentation()?;
        let mut cache = self.resolution.lock().unwrap();
        if cache.is_empty() {
            cache.push(ResolutionLevel { degrees: min.degrees.clone(), columns: Vec::new() });
            if !min.columns.is_empty() || depth > 0 {
                cache.push(ResolutionLevel { degrees: min.column_degrees(), columns: min.columns.clone() });
            }
        }
        while cache.len() <= depth {
            let last = cache.last().unwrap();
            let next = if last.columns.is_empty() && cache.len() > 1 {
                ResolutionLevel { degrees: Vec::new(), columns: Vec::new() }
            } else {
                let rows = cache[cache.len() - 2].rank();
                let pos_degrees = last.degrees.clone();
                let syz = syzygy_matrix(self.ring.poly(), rows, &last.columns, self.ring.ideal());
                let _ = rows;
                let keep = minimal_subset(&self.ring, &pos_degrees, &syz, self.graded);
                let cols: Vec<Vec<Polynomial<S>>> = keep.into_iter().map(|j| syz[j].clone()).collect();
                let degrees = cols
                    .iter()
                    .map(|c| if self.graded { column_degree(c, &pos_degrees).unwrap_or(0) } else { 0 })
                    .collect();
                ResolutionLevel { degrees, columns: cols }
            };
            cache.push(next);
        }
        Ok(cache[..=depth].to_vec())
    }

    /// Betti numbers `β_0 .. β_depth`.
    pub fn betti_numbers(&self, depth: usize) -> Result<Vec<usize>, RingError> {
        Ok(self.resolution(depth)?.iter().map(|l| l.rank()).collect())
    }

    /// The first syzygy module, minimally presented.
    pub fn syzygy_module(&self) -> Result<Self, RingError> {
        let min = self.minimal_presentation()?;
        let sub = Self::submodule_with_degrees(&self.ring, &min.degrees, &min.columns)?;
        let mut sub = sub;
        sub.graded = min.graded;
        sub.minimal_presentation()
    }

    /// `M ⊗ N` for a finite-length module `N` over the same variables.
    pub fn tensor_finite(&self, n: &FiniteLengthModule<S>) -> FiniteLengthModule<S> {
        let parts: Vec<FiniteLengthModule<S>> = self.degrees.iter().map(|d| n.shifted(*d)).collect();
        let sum = FiniteLengthModule::direct_sum(&parts);
        let dim = n.dim();
        let p = self.rank0();
        let cols = tensor_map(n, self.columns.len(), p, |j, i| self.columns[j][i].clone());
        let vectors = cols
            .iter()
            .map(|c| {
                let mut v = vec![S::zero(); p * dim];
                for (r, x) in c {
                    v[*r] = x.clone();
                }
                v
            })
            .collect();
        sum.quotient(&Subspace::new(vectors, p * dim))
    }

    /// `ℓ(M ⊗ N)` computed from ranks alone.
    pub fn tensor_length(&self, n: &FiniteLengthModule<S>) -> usize {
        let dim = n.dim();
        let cols = tensor_map(n, self.columns.len(), self.rank0(), |j, i| self.columns[j][i].clone());
        let cdeg = self.column_degrees();
        let weights = finite_weights(n, &cdeg, self.graded);
        self.rank0() * dim - blocked_rank(&cols, &weights, self.rank0() * dim)
    }

    /// `ℓ(M / I^(n+1) M)`.
    pub fn truncation_length(&self, ideal: &[Polynomial<S>], n: u32) -> Result<usize, RingError> {
        self.check_supported()?;
        let t = self.ring.truncation(ideal, n + 1)?;
        Ok(self.tensor_length(&t))
    }

    /// The module as a finite-length module (Artinian rings only).
    pub fn to_finite(&self) -> Result<FiniteLengthModule<S>, RingError> {
        let s = self.ring.as_finite_module()?;
        Ok(self.tensor_finite(&s))
    }

    /// Hilbert series of a graded module.
    pub fn hilbert_series(&self) -> Result<HilbertSeries, RingError> {
        if !self.graded {
            return Err(RingError::NotGraded);
        }
        let p = self.rank0();
        if p == 0 {
            return Ok(HilbertSeries { dim: None, numerator: vec![0], shift: 0 });
        }
        let poly = self.ring.poly();
        let mut cols = self.columns.clone();
        for f in self.ring.defining_polys() {
            for i in 0..p {
                let mut v: Vec<Polynomial<S>> = (0..p).map(|_| poly.zero()).collect();
                v[i] = f.clone();
                cols.push(v);
            }
        }
        let gb = module_groebner(poly, p, &cols);
        let shift = *self.degrees.iter().min().unwrap();
        let mut num = vec![0i64];
        for i in 0..p {
            let ni = hilbert_numerator(&gb.leading_monomials(i));
            let mut shifted = vec![0i64; (self.degrees[i] - shift) as usize];
            shifted.extend(ni);
            num = add(&num, &shifted);
        }
        Ok(HilbertSeries::from_numerator(self.ring.nvars(), &num, shift))
    }

    /// Krull dimension of the module (`None` for the zero module).
    pub fn dim(&self) -> Result<Option<usize>, RingError> {
        if self.ring.is_artinian() {
            self.check_supported()?;
            return Ok(if self.to_finite()?.dim() == 0 { None } else { Some(0) });
        }
        Ok(self.hilbert_series()?.dim)
    }

    /// Whether the module is Cohen-Macaulay of full dimension: `ℓ(M/θM)`
    /// equals the multiplicity for a random linear system of parameters
    /// `θ` of the ring. Any draw attaining equality certifies the property;
    /// otherwise `CM_DRAWS` draws must all fail.
    pub fn is_maximal_cohen_macaulay(&self) -> Result<bool, RingError> {
        self.check_supported()?;
        if self.ring.is_artinian() {
            return Ok(true);
        }
        let hs = self.hilbert_series()?;
        if hs.dim != Some(self.ring.dim()) {
            return Ok(hs.dim.is_none());
        }
        let e0 = hs.multiplicity();
        let mut rng = ChaCha8Rng::seed_from_u64(CM_SEED);
        for _ in 0..CM_DRAWS {
            let theta = random_linear_forms(self.ring.poly(), self.ring.dim(), &mut rng);
            let a = self.ring.quotient_by(&theta)?;
            if a.dim() != 0 {
                continue;
            }
            let s = a.as_finite_module()?;
            let over_a = Self::cokernel(&a, self.degrees.clone(), self.columns.clone())?;
            if over_a.tensor_length(&s) as i64 == e0 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `M† = Hom_R(M, R)` for a maximal Cohen-Macaulay module over a
    /// Gorenstein ring, minimally presented.
    pub fn dual(&self) -> Result<Self, RingError> {
        if !self.ring.is_gorenstein() {
            return Err(RingError::NotGorenstein);
        }
        if !self.is_maximal_cohen_macaulay()? {
            return Err(RingError::NotMaximalCohenMacaulay);
        }
        let min = self.minimal_presentation()?;
        let p = min.rank0();
        let dual_degrees: Vec<i64> = min.degrees.iter().map(|d| -d).collect();
        if min.columns.is_empty() {
            return Ok(Self::free_with_degrees(&self.ring, dual_degrees));
        }
        let rows: Vec<Vec<Polynomial<S>>> = (0..p).map(|i| min.columns.iter().map(|c| c[i].clone()).collect()).collect();
        let syz = syzygy_matrix(self.ring.poly(), min.columns.len(), &rows, self.ring.ideal());
        let mut sub = Self::submodule_with_degrees(&self.ring, &dual_degrees, &syz)?;
        sub.graded = sub.graded && min.graded;
        sub.minimal_presentation()
    }
}

/// Weight of each coordinate `(generator, basis)` of `N^k`: the degree of the
/// basis vector plus the degree attached to the generator.
pub fn finite_weights<S: Scalar>(n: &FiniteLengthModule<S>, gen_weights: &[i64], graded: bool) -> Vec<i64> {
    let dim = n.dim();
    match (graded, n.degrees()) {
        (true, Some(d)) => gen_weights.iter().flat_map(|w| d.iter().map(move |x| x + w)).collect(),
        _ => vec![0; gen_weights.len() * dim],
    }
}

fn find_unit<S: Scalar>(ring: &QuotientRing<S>, cols: &[Vec<Polynomial<S>>]) -> Option<(usize, usize)> {
    for (l, c) in cols.iter().enumerate() {
        for (k, f) in c.iter().enumerate() {
            if ring.is_unit(f) {
                return Some((l, k));
            }
        }
    }
    None
}

/// Indices of a minimal generating subset of the submodule of `R^p` spanned
/// by `gens`. Graded modules are handled degree by degree; otherwise the
/// ring must be Artinian and the whole module is linearized.
fn minimal_subset<S: Scalar>(ring: &QuotientRing<S>, pos_degrees: &[i64], gens: &[Vec<Polynomial<S>>], graded: bool) -> Vec<usize> {
    let nvars = ring.nvars();
    let poly = ring.poly();
    let times = |u: &Monomial, g: &[Polynomial<S>]| -> Vec<Polynomial<S>> {
        g.iter().map(|f| ring.reduce(&f.mul_term(&S::one(), u))).collect()
    };
    let nonzero: Vec<usize> = (0..gens.len()).filter(|&j| gens[j].iter().any(|f| !f.is_zero())).collect();
    if graded {
        let deg: Vec<i64> = gens.iter().map(|g| column_degree(g, pos_degrees).unwrap_or(0)).collect();
        let mut levels: Vec<i64> = nonzero.iter().map(|&j| deg[j]).collect();
        levels.sort_unstable();
        levels.dedup();
        let mut keep = Vec::new();
        for &delta in &levels {
            let mut vectors: Vec<Vec<Polynomial<S>>> = Vec::new();
            for &j in &nonzero {
                if deg[j] < delta {
                    for u in monomials_of_degree(nvars, (delta - deg[j]) as u32) {
                        vectors.push(times(&u, &gens[j]));
                    }
                }
            }
            let here: Vec<usize> = nonzero.iter().copied().filter(|&j| deg[j] == delta).collect();
            keep.extend(greedy(&vectors, &here, gens));
        }
        keep.sort_unstable();
        keep
    } else {
        let basis = standard_monomials(ring.ideal(), nvars);
        let mut vectors = Vec::new();
        for &j in &nonzero {
            for u in basis.iter().filter(|u| !u.is_one()) {
                vectors.push(times(u, &gens[j]));
            }
        }
        let _ = poly;
        greedy(&vectors, &nonzero, gens)
    }
}

/// Greedily pick candidates independent modulo `base` and earlier picks.
fn greedy<S: Scalar>(base: &[Vec<Polynomial<S>>], candidates: &[usize], gens: &[Vec<Polynomial<S>>]) -> Vec<usize> {
    let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let all = base.iter().chain(candidates.iter().map(|&j| &gens[j]));
    for v in all {
        for (pos, f) in v.iter().enumerate() {
            for (m, _) in f.terms() {
                let next = index.len();
                index.entry((pos, m.clone())).or_insert(next);
            }
        }
    }
    let n = index.len();
    let dense = |v: &[Polynomial<S>]| -> Vec<S> {
        let mut out = vec![S::zero(); n];
        for (pos, f) in v.iter().enumerate() {
            for (m, c) in f.terms() {
                out[index[&(pos, m.clone())]] = c.clone();
            }
        }
        out
    };
    let mut ech = Echelon::new(n);
    for v in base {
        ech.insert(dense(v));
    }
    candidates.iter().copied().filter(|&j| ech.insert(dense(&gens[j]))).collect()
}
