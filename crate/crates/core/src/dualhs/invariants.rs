use super::numerical::{fit_numerical, FitError, NumericalFunction, SeriesNumerator};
use super::reduction::minimal_reduction;
use super::{Config, DualError};
use crate::homology::{dual_hs_value, ext_dual_value, ext_lengths, hom_length};
use crate::poly::Polynomial;
use crate::ring::{Actor, FPModule, FiniteLengthModule, QuotientRing, RingError};
use crate::scalar::Scalar;

/// A fitted value table with its exact series numerator over
/// `(1 - t)^(d+1)` and the coefficients `f^(i)(1) / i!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub function: NumericalFunction,
    pub numerator: SeriesNumerator,
    /// Indices `0..=max(d, 1)`.
    pub coefficients: Vec<i64>,
}

impl Coefficients {
    fn new(function: NumericalFunction, d: usize) -> Result<Self, DualError> {
        let numerator = SeriesNumerator::from_values(&function.values, function.postulation, d + 1)?;
        let coefficients = (0..=d.max(1)).map(|i| numerator.taylor_at_one(i)).collect();
        Ok(Coefficients { function, numerator, coefficients })
    }

    pub fn values(&self) -> &[i64] {
        &self.function.values
    }
}

/// Grow a value table until its tail stabilizes on a polynomial of degree
/// at most `d`, or `nmax` is reached.
pub fn fit_table<F>(d: usize, nmax: usize, mut value: F) -> Result<NumericalFunction, DualError>
where
    F: FnMut(u32) -> Result<i64, DualError>,
{
    let mut values = Vec::new();
    let mut target = (2 * d + 8).min(nmax);
    loop {
        while values.len() <= target {
            values.push(value(values.len() as u32)?);
        }
        match fit_numerical(&values, d) {
            Ok(f) => return Ok(f),
            Err(FitError::PostulationNotReached { .. }) if target < nmax => target = (target + 2).min(nmax),
            Err(FitError::PostulationNotReached { .. }) => return Err(DualError::PostulationNotReached { nmax }),
            Err(e) => return Err(e.into()),
        }
    }
}

pub(crate) fn table_cap<S: Scalar>(ring: &QuotientRing<S>, ideal: &[Polynomial<S>], cfg: &Config) -> usize {
    if let Some(n) = cfg.nmax {
        return n;
    }
    let r = minimal_reduction(ring, ideal, cfg.seed).map_or(0, |red| red.r);
    4 * ring.dim() + 2 * r + 16
}

fn check_ideal<S: Scalar>(ring: &QuotientRing<S>, ideal: &[Polynomial<S>]) -> Result<(), DualError> {
    if !ring.is_mprimary(ideal) {
        return Err(RingError::NotMPrimary.into());
    }
    Ok(())
}

pub(crate) fn check_dual_hypotheses<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>]) -> Result<(), DualError> {
    let ring = m.ring();
    check_ideal(ring, ideal)?;
    if !ring.is_gorenstein() {
        return Err(RingError::NotGorenstein.into());
    }
    if !m.is_maximal_cohen_macaulay()? {
        return Err(RingError::NotMaximalCohenMacaulay.into());
    }
    Ok(())
}

/// Hilbert-Samuel coefficients of `n ↦ ℓ(M / I^(n+1) M)`.
pub fn hilbert_coefficients<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], cfg: &Config) -> Result<Coefficients, DualError> {
    let ring = m.ring();
    check_ideal(ring, ideal)?;
    let d = ring.dim();
    let f = fit_table(d, table_cap(ring, ideal, cfg), |n| Ok(m.truncation_length(ideal, n)? as i64))?;
    Coefficients::new(f, d)
}

/// Dual Hilbert coefficients `c_i` of `n ↦ ℓ(Hom(M, R / I^(n+1)))`.
pub fn dual_hilbert_coefficients<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], cfg: &Config) -> Result<Coefficients, DualError> {
    check_dual_hypotheses(m, ideal)?;
    let ring = m.ring();
    let d = ring.dim();
    let f = fit_table(d, table_cap(ring, ideal, cfg), |n| Ok(dual_hs_value(m, ideal, n)? as i64))?;
    Coefficients::new(f, d)
}

/// The function `n ↦ ℓ(Ext^1(M, R / I^(n+1)))`.
pub fn ext1_dual_function<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], cfg: &Config) -> Result<Coefficients, DualError> {
    check_dual_hypotheses(m, ideal)?;
    let ring = m.ring();
    let d = ring.dim();
    let f = fit_table(d, table_cap(ring, ideal, cfg), |n| Ok(ext_dual_value(1, m, ideal, n)? as i64))?;
    Coefficients::new(f, d)
}

/// `Φ^I(M) = Σ_j Σ_{n=j}^{r-1} C(d, j) ℓ(Ext^j(M, R / I^(n+1-j)))`.
pub fn phi<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], r: usize) -> Result<i64, DualError> {
    let ring = m.ring();
    check_ideal(ring, ideal)?;
    let d = ring.dim();
    let mut total = 0i64;
    // group by the truncation index k = n + 1 - j
    for k in 1..=r {
        let jmax = d.min(r - k);
        let t = ring.truncation(ideal, k as u32)?;
        let ext = ext_lengths(jmax, m, &t)?;
        for (j, e) in ext.iter().enumerate() {
            total += super::binomial(d as i64, j) as i64 * *e as i64;
        }
    }
    Ok(total)
}

/// `I^n / I^(n+1)` as a submodule of `R / I^(n+1)`.
pub fn delta_target<S: Scalar>(ring: &QuotientRing<S>, ideal: &[Polynomial<S>], n: u32) -> Result<FiniteLengthModule<S>, DualError> {
    let t = ring.truncation(ideal, n + 1)?;
    if n == 0 {
        return Ok((*t).clone());
    }
    let one = t.labels().iter().position(|l| l == "1").expect("truncation basis contains 1");
    let mut actor = Actor::new(&t);
    let gens: Vec<Vec<S>> = crate::groebner::ideal_power(ring.poly(), ideal, n)
        .iter()
        .map(|f| {
            let mut v = vec![S::zero(); t.dim()];
            for (i, c) in &actor.action(f)[one] {
                v[*i] = c.clone();
            }
            v
        })
        .collect();
    let sub = t.submodule_closure(gens);
    Ok(t.restrict(&sub))
}

/// `δ_I(M, n) = ℓ(Hom(M, I^n / I^(n+1)))`.
pub fn delta<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], n: u32) -> Result<i64, DualError> {
    check_ideal(m.ring(), ideal)?;
    let target = delta_target(m.ring(), ideal, n)?;
    Ok(hom_length(m, &target)? as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UlrichReport {
    pub e0: i64,
    pub mu: i64,
    /// `ℓ(M / JM)` for a minimal reduction `J` of the maximal ideal.
    pub reduction_length: i64,
    pub ulrich: bool,
    pub routes_agree: bool,
}

/// Whether an MCM module satisfies `e_0(M) = μ(M)`, checked both through
/// the multiplicity and through `JM = mM` for a minimal reduction `J`.
pub fn ulrich_check<S: Scalar>(m: &FPModule<S>, cfg: &Config) -> Result<UlrichReport, DualError> {
    let ring = m.ring();
    if !m.is_maximal_cohen_macaulay()? {
        return Err(RingError::NotMaximalCohenMacaulay.into());
    }
    let vars = ring.poly().vars();
    let e0 = hilbert_coefficients(m, &vars, cfg)?.coefficients[0];
    let mu = m.num_generators()? as i64;
    let red = minimal_reduction(ring, &vars, cfg.seed)?;
    let reduction_length = if red.j.is_empty() {
        m.to_finite()?.dim() as i64
    } else {
        let t = ring.truncation(&red.j, 1)?;
        m.tensor_length(&t) as i64
    };
    let ulrich = e0 == mu;
    Ok(UlrichReport { e0, mu, reduction_length, ulrich, routes_agree: ulrich == (reduction_length == mu) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDimReport {
    /// Largest `n` with `n^n ≠ 0`.
    pub r: usize,
    pub e0: i64,
    /// `α_n = ℓ(Hom(N, S / n^(n+1)))` for `n < r`.
    pub alpha: Vec<i64>,
    /// `r e_0 - Σ α_n`.
    pub c1: i64,
    /// `c_1` read off the series numerator.
    pub c1_series: i64,
}

impl ZeroDimReport {
    pub fn consistent(&self) -> bool {
        self.c1 == self.c1_series
    }
}

/// Length of the nilpotency filtration of the maximal ideal: the largest
/// `n` with `n^n ≠ 0`.
pub(crate) fn nilpotency<S: Scalar>(ring: &QuotientRing<S>) -> Result<usize, DualError> {
    let len = ring.length()?;
    let vars = ring.poly().vars();
    let mut k = 1;
    while ring.truncation(&vars, k)?.dim() < len {
        k += 1;
    }
    Ok(k as usize - 1)
}

/// Invariants of a module over an Artinian Gorenstein local ring with
/// respect to its maximal ideal.
pub fn zero_dim_report<S: Scalar>(n: &FPModule<S>, cfg: &Config) -> Result<ZeroDimReport, DualError> {
    let ring = n.ring();
    if !ring.is_artinian() {
        return Err(RingError::NotArtinian.into());
    }
    if !ring.is_gorenstein() {
        return Err(RingError::NotGorenstein.into());
    }
    let vars = ring.poly().vars();
    let r = nilpotency(ring)?;
    let e0 = n.to_finite()?.dim() as i64;
    let alpha = (0..r as u32).map(|k| Ok(dual_hs_value(n, &vars, k)? as i64)).collect::<Result<Vec<_>, DualError>>()?;
    let c1 = r as i64 * e0 - alpha.iter().sum::<i64>();
    let c1_series = dual_hilbert_coefficients(n, &vars, cfg)?.coefficients[1];
    Ok(ZeroDimReport { r, e0, alpha, c1, c1_series })
}
