use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::finite::{FiniteLengthModule, Operator};
use super::hilbert::{hilbert_numerator, HilbertSeries};
use super::RingError;
use crate::groebner::{buchberger, ideal_power, GroebnerBasis};
use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::scalar::Scalar;

/// Seed for the random linear forms drawn while classifying a ring.
const CLASSIFY_SEED: u64 = 0x5eed;
/// Random draws used by the Cohen-Macaulay test before giving up.
pub(crate) const CM_DRAWS: usize = 3;

type TruncationKey<S> = (Vec<Polynomial<S>>, u32);

struct RingData<S> {
    poly: PolyRing<S>,
    ideal: GroebnerBasis<S>,
    dim: usize,
    graded: bool,
    local: bool,
    gorenstein: bool,
    cohen_macaulay: bool,
    hilbert: Option<HilbertSeries>,
    truncations: Mutex<HashMap<TruncationKey<S>, Arc<FiniteLengthModule<S>>>>,
    truncation_ideals: Mutex<HashMap<TruncationKey<S>, Arc<GroebnerBasis<S>>>>,
}

/// A quotient `R = P / J` of a polynomial ring.
#[derive(Clone)]
pub struct QuotientRing<S> {
    inner: Arc<RingData<S>>,
}

impl<S: Scalar> std::fmt::Debug for QuotientRing<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientRing")
            .field("vars", &self.inner.poly.signature().vars())
            .field("dim", &self.inner.dim)
            .field("graded", &self.inner.graded)
            .finish()
    }
}

impl<S: Scalar> PartialEq for QuotientRing<S> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || (self.inner.poly == other.inner.poly && self.inner.ideal == other.inner.ideal)
    }
}

impl<S: Scalar> QuotientRing<S> {
    /// Build `P / (gens)`, computing the dimension and classifying the ring.
    pub fn new(poly: &PolyRing<S>, gens: &[Polynomial<S>]) -> Result<Self, RingError> {
        let ideal = buchberger(poly, gens);
        if ideal.polys().iter().any(|g| g.is_constant()) {
            return Err(RingError::UnitIdeal);
        }
        let n = poly.nvars();
        let dim = staircase_dim(&ideal.leading_monomials(0), n);
        let graded = gens.iter().all(|g| g.is_homogeneous());
        let hilbert = graded.then(|| HilbertSeries::from_numerator(n, &hilbert_numerator(&ideal.leading_monomials(0)), 0));
        let mut data = RingData {
            poly: poly.clone(),
            ideal,
            dim,
            graded,
            local: graded,
            gorenstein: false,
            cohen_macaulay: false,
            hilbert,
            truncations: Mutex::new(HashMap::new()),
            truncation_ideals: Mutex::new(HashMap::new()),
        };
        if dim == 0 && !graded {
            data.local = all_vars_nilpotent(&data.ideal, n);
        }
        let mut ring = QuotientRing { inner: Arc::new(data) };
        let (cm, gor) = ring.classify();
        let data = Arc::get_mut(&mut ring.inner).expect("unshared ring");
        data.cohen_macaulay = cm;
        data.gorenstein = gor;
        Ok(ring)
    }

    /// The polynomial ring itself.
    pub fn polynomial_ring(poly: &PolyRing<S>) -> Self {
        Self::new(poly, &[]).expect("zero ideal")
    }

    pub fn poly(&self) -> &PolyRing<S> {
        &self.inner.poly
    }

    pub fn nvars(&self) -> usize {
        self.inner.poly.nvars()
    }

    pub fn ideal(&self) -> &GroebnerBasis<S> {
        &self.inner.ideal
    }

    pub fn defining_polys(&self) -> Vec<Polynomial<S>> {
        self.inner.ideal.polys()
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn is_graded(&self) -> bool {
        self.inner.graded
    }

    pub fn is_artinian(&self) -> bool {
        self.inner.dim == 0
    }

    /// Graded, or Artinian with every variable nilpotent.
    pub fn is_local(&self) -> bool {
        self.inner.local
    }

    pub fn is_gorenstein(&self) -> bool {
        self.inner.gorenstein
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.inner.cohen_macaulay
    }

    /// Hilbert series of a graded ring.
    pub fn hilbert_series(&self) -> Option<&HilbertSeries> {
        self.inner.hilbert.as_ref()
    }

    /// Whether lengths can be computed: graded, or Artinian local.
    pub fn check_supported(&self) -> Result<(), RingError> {
        if self.inner.graded || (self.inner.dim == 0 && self.inner.local) {
            Ok(())
        } else if self.inner.dim == 0 {
            Err(RingError::NotLocal)
        } else {
            Err(RingError::NotGraded)
        }
    }

    pub fn reduce(&self, f: &Polynomial<S>) -> Polynomial<S> {
        if self.inner.ideal.is_empty() {
            f.clone()
        } else {
            self.inner.ideal.reduce_poly(f)
        }
    }

    pub fn mul(&self, f: &Polynomial<S>, g: &Polynomial<S>) -> Polynomial<S> {
        self.reduce(&self.inner.poly.mul(f, g))
    }

    pub fn is_zero(&self, f: &Polynomial<S>) -> bool {
        self.reduce(f).is_zero()
    }

    /// Whether `f` is invertible; meaningful for local rings.
    pub fn is_unit(&self, f: &Polynomial<S>) -> bool {
        !self.reduce(f).constant_term().is_zero()
    }

    /// Inverse of a unit of a local ring.
    pub fn inverse(&self, u: &Polynomial<S>) -> Option<Polynomial<S>> {
        let u = self.reduce(u);
        let c = u.constant_term();
        let ci = c.inv()?;
        if u.is_constant() {
            return Some(self.inner.poly.constant(ci));
        }
        if !self.is_artinian() {
            return None;
        }
        // u = c (1 - n) with n nilpotent: u^-1 = c^-1 (1 + n + n^2 + ...)
        let poly = &self.inner.poly;
        let n = poly.sub(&poly.one(), &u.scale(&ci));
        let mut term = poly.one();
        let mut sum = poly.one();
        loop {
            term = self.mul(&term, &n);
            if term.is_zero() {
                break;
            }
            sum = poly.add(&sum, &term);
        }
        Some(sum.scale(&ci))
    }

    /// Reduced Gröbner basis of `J + (gens)`.
    pub fn extend_ideal(&self, gens: &[Polynomial<S>]) -> GroebnerBasis<S> {
        let mut all = self.inner.ideal.polys();
        all.extend(gens.iter().cloned());
        buchberger(&self.inner.poly, &all)
    }

    /// Whether `(gens)` is primary to the ideal of the variables.
    pub fn is_mprimary(&self, gens: &[Polynomial<S>]) -> bool {
        let gb = self.extend_ideal(gens);
        let n = self.nvars();
        let lms = gb.leading_monomials(0);
        if lms.iter().any(|m| m.is_one()) {
            return false;
        }
        staircase_dim(&lms, n) == 0 && all_vars_nilpotent(&gb, n)
    }

    /// `R / I^n` with the standard monomials of `J + I^n` as basis; the zero
    /// module for `n = 0`.
    pub fn truncation(&self, gens: &[Polynomial<S>], n: u32) -> Result<Arc<FiniteLengthModule<S>>, RingError> {
        let key = (gens.to_vec(), n);
        if let Some(t) = self.inner.truncations.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        if !self.is_mprimary(gens) {
            return Err(RingError::NotMPrimary);
        }
        let t = if n == 0 {
            FiniteLengthModule::zero(self.nvars())
        } else {
            let gb = self.truncation_ideal(gens, n);
            algebra_from_basis(&self.inner.poly, &gb, gens.iter().all(|g| g.is_homogeneous()) && self.inner.graded)
        };
        let t = Arc::new(t);
        self.inner.truncations.lock().unwrap().insert(key, t.clone());
        Ok(t)
    }

    /// Gröbner basis of `J + I^n` in the ambient polynomial ring.
    fn truncation_ideal(&self, gens: &[Polynomial<S>], n: u32) -> Arc<GroebnerBasis<S>> {
        let key = (gens.to_vec(), n);
        if let Some(g) = self.inner.truncation_ideals.lock().unwrap().get(&key) {
            return g.clone();
        }
        let power = ideal_power(&self.inner.poly, gens, n);
        let g = Arc::new(self.extend_ideal(&power));
        self.inner.truncation_ideals.lock().unwrap().insert(key, g.clone());
        g
    }

    /// Multiplication by `f` as a map `R/I^a -> R/I^b`, one sparse column per
    /// basis element of the source truncation. Well defined when `f I^a ⊆ I^b`.
    pub fn truncation_map(&self, gens: &[Polynomial<S>], a: u32, b: u32, f: &Polynomial<S>) -> Result<Vec<Vec<(usize, S)>>, RingError> {
        self.truncation(gens, a)?;
        self.truncation(gens, b)?;
        if a == 0 {
            return Ok(Vec::new());
        }
        let src = standard_monomials(&self.truncation_ideal(gens, a), self.nvars());
        if b == 0 {
            return Ok(vec![Vec::new(); src.len()]);
        }
        let dst_gb = self.truncation_ideal(gens, b);
        let dst = standard_monomials(&dst_gb, self.nvars());
        let index: HashMap<Monomial, usize> = dst.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let order = self.inner.poly.order();
        Ok(src
            .iter()
            .map(|m| {
                let prod = f.mul(&self.inner.poly.monomial(m.clone()), order);
                let nf = dst_gb.reduce_poly(&prod);
                let mut col: Vec<(usize, S)> = nf.terms().iter().map(|(m, c)| (index[m], c.clone())).collect();
                col.sort_by_key(|(k, _)| *k);
                col
            })
            .collect())
    }

    /// The ring itself as a finite-length module (Artinian rings only).
    pub fn as_finite_module(&self) -> Result<FiniteLengthModule<S>, RingError> {
        if !self.is_artinian() {
            return Err(RingError::NotArtinian);
        }
        self.check_supported()?;
        Ok(algebra_from_basis(&self.inner.poly, &self.inner.ideal, self.inner.graded))
    }

    /// Length of an Artinian ring.
    pub fn length(&self) -> Result<usize, RingError> {
        if !self.is_artinian() {
            return Err(RingError::NotArtinian);
        }
        Ok(standard_monomials(&self.inner.ideal, self.nvars()).len())
    }

    /// Quotient by further generators.
    pub fn quotient_by(&self, gens: &[Polynomial<S>]) -> Result<Self, RingError> {
        let mut all = self.inner.ideal.polys();
        all.extend(gens.iter().cloned());
        Self::new(&self.inner.poly, &all)
    }

    /// Classify as Cohen-Macaulay and Gorenstein.
    fn classify(&self) -> (bool, bool) {
        if self.is_artinian() {
            if !self.inner.local {
                return (true, false);
            }
            let s = algebra_from_basis(&self.inner.poly, &self.inner.ideal, self.inner.graded);
            return (true, s.socle_dim() == 1);
        }
        if !self.inner.graded {
            return (false, false);
        }
        let e0 = self.inner.hilbert.as_ref().unwrap().multiplicity();
        let mut rng = ChaCha8Rng::seed_from_u64(CLASSIFY_SEED);
        for _ in 0..CM_DRAWS {
            let theta = random_linear_forms(&self.inner.poly, self.inner.dim, &mut rng);
            let Ok(a) = self.quotient_by(&theta) else { continue };
            if a.dim() != 0 {
                continue;
            }
            let len = a.length().unwrap() as i64;
            if len == e0 {
                let s = algebra_from_basis(&a.inner.poly, &a.inner.ideal, true);
                return (true, s.socle_dim() == 1);
            }
        }
        (false, false)
    }
}

/// `count` random linear forms.
pub fn random_linear_forms<S: Scalar, R: rand::Rng + ?Sized>(poly: &PolyRing<S>, count: usize, rng: &mut R) -> Vec<Polynomial<S>> {
    let vars = poly.vars();
    (0..count)
        .map(|_| {
            let coeffs: Vec<S> = (0..vars.len()).map(|_| S::random(rng)).collect();
            poly.combination(&vars, &coeffs)
        })
        .collect()
}

/// Largest set of variables avoided by every leading monomial's support.
pub(crate) fn staircase_dim(lms: &[Monomial], n: usize) -> usize {
    let supports: Vec<u64> = lms.iter().map(|m| m.support().fold(0u64, |acc, i| acc | 1 << i)).collect();
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    best
}

fn all_vars_nilpotent<S: Scalar>(gb: &GroebnerBasis<S>, n: usize) -> bool {
    let lms = gb.leading_monomials(0);
    let bound = standard_monomials_bounded(&lms, n, usize::MAX).map_or(usize::MAX, |v| v.len()) as u32;
    (0..n).all(|i| {
        let x = gb.ring().var(i);
        gb.contains(&gb.ring().pow(&x, bound))
    })
}

/// Standard monomials of a zero-dimensional basis, in breadth-first order of
/// degree.
pub(crate) fn standard_monomials<S: Scalar>(gb: &GroebnerBasis<S>, n: usize) -> Vec<Monomial> {
    standard_monomials_bounded(&gb.leading_monomials(0), n, usize::MAX).expect("zero-dimensional ideal")
}

fn standard_monomials_bounded(lms: &[Monomial], n: usize, cap: usize) -> Option<Vec<Monomial>> {
    if lms.iter().any(|m| m.is_one()) {
        return Some(Vec::new());
    }
    if staircase_dim(lms, n) > 0 {
        return None;
    }
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([Monomial::one(n)]);
    seen.insert(Monomial::one(n));
    while let Some(m) = queue.pop_front() {
        out.push(m.clone());
        if out.len() > cap {
            return None;
        }
        for i in 0..n {
            let next = m.mul_var(i);
            if !seen.contains(&next) && !lms.iter().any(|l| l.divides(&next)) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exponents().cmp(b.exponents()).reverse()));
    Some(out)
}

/// `P / G` for a zero-dimensional basis `G`, with standard monomials as basis
/// and operators from normal forms.
pub(crate) fn algebra_from_basis<S: Scalar>(poly: &PolyRing<S>, gb: &GroebnerBasis<S>, graded: bool) -> FiniteLengthModule<S> {
    let n = poly.nvars();
    let basis = standard_monomials(gb, n);
    if basis.is_empty() {
        return FiniteLengthModule::zero(n);
    }
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    let ops = (0..n)
        .map(|i| {
            Operator::new(
                basis
                    .iter()
                    .map(|b| {
                        let prod = b.mul_var(i);
                        if let Some(&k) = index.get(&prod) {
                            return vec![(k, S::one())];
                        }
                        let nf = gb.reduce_poly(&poly.monomial(prod));
                        let mut col: Vec<(usize, S)> = nf.terms().iter().map(|(m, c)| (index[m], c.clone())).collect();
                        col.sort_by_key(|(k, _)| *k);
                        col
                    })
                    .collect(),
            )
        })
        .collect();
    let degrees = graded.then(|| basis.iter().map(|m| m.degree() as i64).collect());
    let labels = basis.iter().map(|m| if m.is_one() { "1".to_string() } else { poly.format_monomial(m) }).collect();
    FiniteLengthModule::new(n, ops, degrees, labels)
}
