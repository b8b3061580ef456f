use std::collections::{BTreeMap, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Check, Config, DualError};
use crate::groebner::{ideal_power, ideal_product};
use crate::homology::ext_map_injective;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::ring::{finite_weights, tensor_map, Actor, FPModule, QuotientRing, SparseVec, Subspace};
use crate::scalar::Scalar;

const REDUCTION_ATTEMPTS: usize = 5;
const REDUCTION_CAP: u32 = 24;
const SUPERFICIAL_ATTEMPTS: usize = 8;
/// Largest `c` tried in the colon condition.
const COLON_CAP: usize = 4;
/// Largest starting index tried for the Ext injectivity window.
const EXT_START_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionData<S> {
    /// Generators of the reduction; empty in dimension zero.
    pub j: Vec<Polynomial<S>>,
    /// Least `n` with `J I^n = I^(n+1)`.
    pub r: usize,
    pub seed: u64,
}

fn random_combination<S: Scalar>(ring: &QuotientRing<S>, gens: &[Polynomial<S>], rng: &mut ChaCha8Rng) -> Polynomial<S> {
    let coeffs: Vec<S> = gens.iter().map(|_| S::random(rng)).collect();
    ring.poly().combination(gens, &coeffs)
}

/// `I^(n+1) ⊆ J I^n` in the ring.
fn reduces_at<S: Scalar>(ring: &QuotientRing<S>, j: &[Polynomial<S>], ideal: &[Polynomial<S>], n: u32) -> bool {
    let p = ring.poly();
    let lower = ideal_product(p, j, &ideal_power(p, ideal, n));
    let gb = ring.extend_ideal(&lower);
    ideal_power(p, ideal, n + 1).iter().all(|f| gb.contains(f))
}

/// A minimal reduction `J` of an m-primary ideal, generated by `d` random
/// combinations of the generators, and its reduction number.
pub fn minimal_reduction<S: Scalar>(ring: &QuotientRing<S>, ideal: &[Polynomial<S>], seed: u64) -> Result<ReductionData<S>, DualError> {
    if !ring.is_mprimary(ideal) {
        return Err(crate::ring::RingError::NotMPrimary.into());
    }
    let d = ring.dim();
    if d == 0 {
        let p = ring.poly();
        let zero = |n: u32| ideal_power(p, ideal, n).iter().all(|f| ring.is_zero(f));
        let mut r = 0;
        while !zero(r + 1) {
            r += 1;
        }
        return Ok(ReductionData { j: Vec::new(), r: r as usize, seed });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REDUCTION_ATTEMPTS {
        let j: Vec<Polynomial<S>> = (0..d).map(|_| random_combination(ring, ideal, &mut rng)).collect();
        if !ring.is_mprimary(&j) {
            continue;
        }
        if let Some(r) = (0..=REDUCTION_CAP).find(|&n| reduces_at(ring, &j, ideal, n)) {
            return Ok(ReductionData { j, r: r as usize, seed });
        }
    }
    Err(DualError::ReductionNotFound { attempts: REDUCTION_ATTEMPTS })
}

/// `M / xM` over `R / (x)`.
pub fn reduce_by<S: Scalar>(m: &FPModule<S>, x: &Polynomial<S>) -> Result<FPModule<S>, DualError> {
    let ring = m.ring().quotient_by(std::slice::from_ref(x))?;
    Ok(m.base_change(&ring)?)
}

fn degree_of<S: Scalar>(f: &Polynomial<S>) -> Option<i64> {
    if f.is_homogeneous() {
        f.total_degree().map(|d| d as i64)
    } else {
        None
    }
}

/// Whether `(I^(n+1) P :_P x) ∩ I^c P = I^n P`, computed inside
/// `P / I^(n+1) P`. Requires `n ≥ c`.
pub fn filtration_check<S: Scalar>(
    p: &FPModule<S>,
    ideal: &[Polynomial<S>],
    x: &Polynomial<S>,
    c: u32,
    n: u32,
) -> Result<bool, DualError> {
    let ring = p.ring();
    let t = ring.truncation(ideal, n + 1)?;
    let dim = t.dim();
    let rank = p.rank0();
    if dim == 0 || rank == 0 {
        return Ok(true);
    }
    let shift = degree_of(x);
    let graded = p.is_graded()
        && t.degrees().is_some()
        && shift.is_some()
        && ideal.iter().all(|g| g.is_homogeneous());
    let e = if graded { shift.unwrap() } else { 0 };
    let weights = finite_weights(&t, p.degrees(), graded);
    let total = rank * dim;

    let relations = tensor_map(&t, p.columns().len(), rank, |j, i| p.columns()[j][i].clone());
    let mut actor = Actor::new(&t);
    let mut multiples = |f: &Polynomial<S>| -> Vec<(i64, SparseVec<S>)> {
        let act = actor.action(f);
        let df = if graded { degree_of(f).unwrap_or(0) } else { 0 };
        (0..total)
            .map(|u| {
                let (g, b) = (u / dim, u % dim);
                (weights[u] + df, act[b].iter().map(|(r, s)| (g * dim + r, s.clone())).collect())
            })
            .collect()
    };
    let x_images = multiples(x);
    let power = |k: u32| ideal_power(ring.poly(), ideal, k);
    let mut low = Vec::new();
    for f in power(c) {
        low.extend(multiples(&f));
    }
    let mut high = Vec::new();
    for f in power(n) {
        high.extend(multiples(&f));
    }

    let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (u, w) in weights.iter().enumerate() {
        blocks.entry(*w).or_default().push(u);
    }
    let index: HashMap<usize, usize> =
        blocks.values().flat_map(|coords| coords.iter().enumerate().map(|(k, &u)| (u, k))).collect();
    let dense = |v: &SparseVec<S>, len: usize| -> Vec<S> {
        let mut out = vec![S::zero(); len];
        for (r, s) in v {
            out[index[r]] = s.clone();
        }
        out
    };
    let rel_weight = |v: &SparseVec<S>| v.first().map(|(r, _)| weights[*r]);
    let span = |w: i64, extra: &[(i64, SparseVec<S>)], len: usize| -> Vec<Vec<S>> {
        let mut vs: Vec<Vec<S>> =
            relations.iter().filter(|v| rel_weight(v) == Some(w)).map(|v| dense(v, len)).collect();
        vs.extend(extra.iter().filter(|(ew, v)| *ew == w && !v.is_empty()).map(|(_, v)| dense(v, len)));
        vs
    };

    for (&w, coords) in &blocks {
        let len = coords.len();
        // kernel of x into the quotient by relations
        let target_len = blocks.get(&(w + e)).map_or(0, |c| c.len());
        let kernel: Vec<Vec<S>> = if target_len == 0 {
            (0..len).map(|k| (0..len).map(|j| if j == k { S::one() } else { S::zero() }).collect()).collect()
        } else {
            let rel = Subspace::new(span(w + e, &[], target_len), target_len);
            let mut a = Matrix::zeros(target_len, len);
            for (k, &u) in coords.iter().enumerate() {
                let col = rel.reduce(dense(&x_images[u].1, target_len));
                for (r, s) in col.into_iter().enumerate() {
                    a[(r, k)] = s;
                }
            }
            a.kernel()
        };
        let a_rows = span(w, &low, len);
        let b_rows = span(w, &high, len);
        let a = Subspace::new(a_rows.clone(), len);
        let b = Subspace::new(b_rows, len);
        let mut both = kernel.clone();
        both.extend(a_rows);
        let sum = Subspace::new(both, len);
        if kernel.len() + a.rank() - sum.rank() != b.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct SuperficialOptions<S: Scalar> {
    /// Modules `P` whose filtrations must satisfy the colon condition; the
    /// ring itself should normally be among them.
    pub protected: Vec<FPModule<S>>,
    /// Modules `M` for which `Ext^1` and `Ext^2(M, R/I^n) -> (M, R/I^(n+1))`
    /// induced by `x` must be injective.
    pub ext_modules: Vec<FPModule<S>>,
    /// Require the colon condition with `c = 0`, i.e. `x*` regular on the
    /// associated graded modules in the window.
    pub require_regular: bool,
}

#[derive(Clone, Debug)]
pub struct SuperficialReport<S> {
    pub x: Polynomial<S>,
    /// Largest `c` needed among the protected modules.
    pub c: usize,
    /// Start of the verified Ext window, when Ext modules were given.
    pub ext_start: Option<usize>,
    pub attempts: usize,
    pub checks: Vec<Check>,
}

impl<S: Scalar> SuperficialOptions<S> {
    pub fn for_ring(ring: &QuotientRing<S>) -> Self {
        SuperficialOptions { protected: vec![FPModule::free(ring, 1)], ext_modules: Vec::new(), require_regular: false }
    }
}

fn colon_window<S: Scalar>(p: &FPModule<S>, ideal: &[Polynomial<S>], x: &Polynomial<S>, window: usize, cap: usize) -> Result<Option<usize>, DualError> {
    for c in 0..=cap {
        let mut ok = true;
        for n in c..=c + window {
            if !filtration_check(p, ideal, x, c as u32, n as u32)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn ext_window<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], x: &Polynomial<S>, window: usize) -> Result<Option<usize>, DualError> {
    let ring = m.ring();
    let shift = degree_of(x).unwrap_or(0);
    'start: for n0 in 1..=EXT_START_CAP {
        for n in n0..=n0 + window {
            let src = ring.truncation(ideal, n as u32)?;
            let dst = ring.truncation(ideal, n as u32 + 1)?;
            let phi = ring.truncation_map(ideal, n as u32, n as u32 + 1, x)?;
            for i in 1..=2 {
                if !ext_map_injective(i, m, &src, &dst, &phi, shift)? {
                    continue 'start;
                }
            }
        }
        return Ok(Some(n0));
    }
    Ok(None)
}

/// A random combination `x` of the generators of `I` that passes the
/// window-verified superficiality checks.
pub fn superficial_element<S: Scalar>(
    ring: &QuotientRing<S>,
    ideal: &[Polynomial<S>],
    opts: &SuperficialOptions<S>,
    cfg: &Config,
) -> Result<SuperficialReport<S>, DualError> {
    if ring.dim() == 0 {
        return Err(DualError::ZeroDimensional);
    }
    if !ring.is_mprimary(ideal) {
        return Err(crate::ring::RingError::NotMPrimary.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let w = cfg.window;
    'attempt: for attempt in 1..=SUPERFICIAL_ATTEMPTS {
        let x = random_combination(ring, ideal, &mut rng);
        if ring.is_zero(&x) {
            continue;
        }
        let mut checks = Vec::new();
        let mut c_max = 0;
        for (k, p) in opts.protected.iter().enumerate() {
            let cap = if opts.require_regular { 0 } else { COLON_CAP };
            match colon_window(p, ideal, &x, w, cap)? {
                Some(c) => {
                    c_max = c_max.max(c);
                    checks.push(Check::new(
                        format!("colon condition on protected module {k} (window-verified)"),
                        format!("c = {c}, n in [{c}, {}]", c + w),
                        "holds",
                        true,
                    ));
                }
                None => continue 'attempt,
            }
        }
        let mut ext_start = None;
        for (k, m) in opts.ext_modules.iter().enumerate() {
            match ext_window(m, ideal, &x, w)? {
                Some(n0) => {
                    ext_start = Some(ext_start.map_or(n0, |s: usize| s.max(n0)));
                    checks.push(Check::new(
                        format!("Ext^1 and Ext^2 maps injective for module {k} (window-verified)"),
                        format!("n in [{n0}, {}]", n0 + w),
                        "injective",
                        true,
                    ));
                }
                None => continue 'attempt,
            }
        }
        return Ok(SuperficialReport { x, c: c_max, ext_start, attempts: attempt, checks });
    }
    Err(DualError::SuperficialNotFound { attempts: SUPERFICIAL_ATTEMPTS })
}
