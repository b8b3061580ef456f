use std::fmt;
use std::str::FromStr;

use super::invariants::{
    check_dual_hypotheses, delta, dual_hilbert_coefficients, ext1_dual_function, hilbert_coefficients, nilpotency, phi, ulrich_check,
    zero_dim_report, Coefficients,
};
use super::numerical::binomial;
use super::reduction::{minimal_reduction, reduce_by, superficial_element, SuperficialOptions};
use super::{Config, DualError};
use crate::homology::{bass_mu1, dual_hs_value, ext_dual_value, ext_lengths, hom_length};
use crate::poly::Polynomial;
use crate::ring::{FPModule, QuotientRing, RingError};
use crate::scalar::Scalar;

/// Range `0..=TERMWISE_N` used for termwise identities.
const TERMWISE_N: u32 = 10;
/// Number of superficial elements compared for coefficient invariance.
const INVARIANCE_DRAWS: u64 = 3;

macro_rules! claims {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum ClaimId { $($variant),* }

        impl ClaimId {
            pub const ALL: &'static [ClaimId] = &[$(ClaimId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self { $(ClaimId::$variant => $name),* }
            }
        }

        impl FromStr for ClaimId {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                match s { $($name => Ok(ClaimId::$variant),)* _ => Err(format!("unknown claim `{s}`")) }
            }
        }
    };
}

claims! {
    C0E0 => "C0E0",
    DualMult => "DUALMULT",
    DegBounds => "DEGBOUNDS",
    Ex25 => "EX25",
    Prop33 => "PROP33",
    Cor34 => "COR34",
    Prop41 => "PROP41",
    Thm42 => "THM42",
    Sec51 => "SEC51",
    Prop53 => "PROP53",
    Cor56 => "COR56",
    Thm57 => "THM57",
    Prop59 => "PROP59",
    Thm61 => "THM61",
    Sec63 => "SEC63",
    Prop64 => "PROP64",
    Delta => "DELTA",
    Matlis => "MATLIS",
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), lhs: lhs.into(), rhs: rhs.into(), ok }
    }

    fn equal<T: PartialEq + fmt::Debug>(name: impl Into<String>, lhs: T, rhs: T) -> Self {
        let ok = lhs == rhs;
        Check::new(name, format!("{lhs:?}"), format!("{rhs:?}"), ok)
    }

    fn at_least(name: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        Check::new(name, lhs.to_string(), rhs.to_string(), lhs >= rhs)
    }

    fn at_most(name: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        Check::new(name, lhs.to_string(), rhs.to_string(), lhs <= rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: ClaimId,
    pub instance: String,
    pub quantities: Vec<(String, i64)>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub witness: Vec<String>,
}

impl VerificationReport {
    pub fn quantity(&self, name: &str) -> Option<i64> {
        self.quantities.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// A module together with an ideal of its ring.
#[derive(Clone, Debug)]
pub struct Instance<S: Scalar> {
    pub module: FPModule<S>,
    pub ideal: Vec<Polynomial<S>>,
    pub description: String,
}

impl<S: Scalar> Instance<S> {
    pub fn new(module: FPModule<S>, ideal: Vec<Polynomial<S>>, description: impl Into<String>) -> Self {
        Instance { module, ideal, description: description.into() }
    }

    /// The module with respect to the ideal of the variables.
    pub fn at_maximal(module: FPModule<S>, description: impl Into<String>) -> Self {
        let ideal = module.ring().poly().vars();
        Instance::new(module, ideal, description)
    }

    fn ring(&self) -> &QuotientRing<S> {
        self.module.ring()
    }
}

#[derive(Default)]
struct Body {
    quantities: Vec<(String, i64)>,
    checks: Vec<Check>,
    witness: Vec<String>,
}

impl Body {
    fn q(&mut self, name: &str, v: i64) {
        self.quantities.push((name.to_string(), v));
    }

    fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.witness.push(s.into());
    }
}

fn unmet(e: DualError) -> DualError {
    match e {
        DualError::Ring(
            r @ (RingError::NotGorenstein
            | RingError::NotMaximalCohenMacaulay
            | RingError::NotMPrimary
            | RingError::NotArtinian
            | RingError::NotLocal
            | RingError::NotGraded),
        ) => DualError::HypothesesUnmet(r.to_string()),
        other => other,
    }
}

/// Run the exact check of one claim on an instance.
pub fn verify<S: Scalar>(claim: ClaimId, inst: &Instance<S>, cfg: &Config) -> Result<VerificationReport, DualError> {
    let body = match run(claim, inst, cfg).map_err(unmet) {
        Ok(b) => b,
        Err(e @ (DualError::PostulationNotReached { .. }
        | DualError::Fit(_)
        | DualError::SuperficialNotFound { .. }
        | DualError::ReductionNotFound { .. })) => {
            return Ok(VerificationReport {
                claim,
                instance: inst.description.clone(),
                quantities: Vec::new(),
                verdict: Verdict::Inconclusive,
                checks: Vec::new(),
                witness: vec![e.to_string()],
            })
        }
        Err(e) => return Err(e),
    };
    let verdict = if !body.checks.is_empty() && body.checks.iter().all(|c| c.ok) { Verdict::Pass } else { Verdict::Fail };
    Ok(VerificationReport {
        claim,
        instance: inst.description.clone(),
        quantities: body.quantities,
        verdict,
        checks: body.checks,
        witness: body.witness,
    })
}

fn run<S: Scalar>(claim: ClaimId, inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    match claim {
        ClaimId::C0E0 => c0e0(inst, cfg),
        ClaimId::DualMult => dual_mult(inst, cfg),
        ClaimId::DegBounds => degree_bounds(inst, cfg),
        ClaimId::Ex25 => parameter_ideal(inst),
        ClaimId::Prop33 => difference_identity(inst, cfg),
        ClaimId::Cor34 => coefficient_invariance(inst, cfg),
        ClaimId::Prop41 => ext1_series(inst, cfg),
        ClaimId::Thm42 => freeness(inst, cfg),
        ClaimId::Sec51 => zero_dimensional(inst, cfg),
        ClaimId::Prop53 => c1_descends(inst, cfg),
        ClaimId::Cor56 => hom_bound(inst, cfg),
        ClaimId::Thm57 => c1_lower_bound(inst, cfg),
        ClaimId::Prop59 => phi_descends(inst, cfg),
        ClaimId::Thm61 => exact_difference(inst, cfg),
        ClaimId::Sec63 => residue_field_series(inst),
        ClaimId::Prop64 => ulrich_series(inst, cfg),
        ClaimId::Delta => delta_identity(inst),
        ClaimId::Matlis => matlis(inst),
    }
}

fn is_zero_module<S: Scalar>(m: &FPModule<S>) -> Result<bool, DualError> {
    Ok(m.num_generators()? == 0)
}

/// Dual Hilbert-Samuel values for `n = 0..count`, zero for the zero module.
fn dual_values<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], count: u32) -> Result<Vec<i64>, DualError> {
    (0..count).map(|n| Ok(dual_hs_value(m, ideal, n)? as i64)).collect()
}

fn ext1_values<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], count: u32) -> Result<Vec<i64>, DualError> {
    (0..count).map(|n| Ok(ext_dual_value(1, m, ideal, n)? as i64)).collect()
}

/// Dual coefficients, with the zero module giving zero.
fn dual_coefficients<S: Scalar>(m: &FPModule<S>, ideal: &[Polynomial<S>], cfg: &Config) -> Result<Option<Coefficients>, DualError> {
    if is_zero_module(m)? {
        return Ok(None);
    }
    dual_hilbert_coefficients(m, ideal, cfg).map(Some)
}

fn coefficient(c: &Option<Coefficients>, i: usize) -> i64 {
    c.as_ref().map_or(0, |c| c.coefficients[i])
}

fn is_maximal_ideal<S: Scalar>(ring: &QuotientRing<S>, ideal: &[Polynomial<S>]) -> bool {
    let vars = ring.poly().vars();
    let gb = ring.extend_ideal(ideal);
    let m = ring.extend_ideal(&vars);
    vars.iter().all(|v| gb.contains(v)) && ideal.iter().all(|f| m.contains(f))
}

fn require_maximal<S: Scalar>(inst: &Instance<S>) -> Result<(), DualError> {
    if !is_maximal_ideal(inst.ring(), &inst.ideal) {
        return Err(DualError::HypothesesUnmet("the ideal must be the maximal ideal".into()));
    }
    Ok(())
}

/// Gorenstein with Cohen-Macaulay associated graded ring, certified only
/// for the maximal ideal of a standard graded ring.
fn require_graded_cm<S: Scalar>(inst: &Instance<S>) -> Result<(), DualError> {
    require_maximal(inst)?;
    let ring = inst.ring();
    if !ring.is_graded() {
        return Err(DualError::HypothesesUnmet("associated graded ring is only certified Cohen-Macaulay for graded rings".into()));
    }
    if !ring.is_gorenstein() {
        return Err(RingError::NotGorenstein.into());
    }
    Ok(())
}

fn require_artinian_gorenstein<S: Scalar>(ring: &QuotientRing<S>) -> Result<(), DualError> {
    if !ring.is_artinian() {
        return Err(RingError::NotArtinian.into());
    }
    if !ring.is_local() {
        return Err(RingError::NotLocal.into());
    }
    if !ring.is_gorenstein() {
        return Err(RingError::NotGorenstein.into());
    }
    Ok(())
}

fn c0e0<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    let c = dual_hilbert_coefficients(&inst.module, &inst.ideal, cfg)?;
    let e = hilbert_coefficients(&inst.module, &inst.ideal, cfg)?;
    b.q("c0", c.coefficients[0]);
    b.q("e0", e.coefficients[0]);
    b.check(Check::equal("c0 = e0", c.coefficients[0], e.coefficients[0]));
    Ok(b)
}

fn dual_mult<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    check_dual_hypotheses(&inst.module, &inst.ideal)?;
    let dual = inst.module.dual()?;
    let e = hilbert_coefficients(&inst.module, &inst.ideal, cfg)?.coefficients[0];
    let ed = hilbert_coefficients(&dual, &inst.ideal, cfg)?.coefficients[0];
    b.q("e0", e);
    b.q("e0_dual", ed);
    b.check(Check::equal("e0(dual) = e0", ed, e));
    Ok(b)
}

fn degree_bounds<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    let d = inst.ring().dim();
    let dual = dual_hilbert_coefficients(&inst.module, &inst.ideal, cfg)?;
    let ext = ext1_dual_function(&inst.module, &inst.ideal, cfg)?;
    let deg = |f: Option<usize>| f.map_or(-1, |x| x as i64);
    b.q("d", d as i64);
    b.q("deg_eps0", deg(dual.function.degree));
    b.q("deg_eps1", deg(ext.function.degree));
    b.check(Check::equal("deg eps0 = d", deg(dual.function.degree), d as i64));
    b.check(Check::new(
        "deg eps1 <= d - 1",
        deg(ext.function.degree).to_string(),
        (d as i64 - 1).to_string(),
        deg(ext.function.degree) <= d as i64 - 1,
    ));
    Ok(b)
}

fn parameter_ideal<S: Scalar>(inst: &Instance<S>) -> Result<Body, DualError> {
    let mut b = Body::default();
    let (m, j) = (&inst.module, &inst.ideal);
    check_dual_hypotheses(m, j)?;
    let d = inst.ring().dim();
    if j.len() != d {
        return Err(DualError::HypothesesUnmet(format!("a parameter ideal needs {d} generators, got {}", j.len())));
    }
    let len = m.truncation_length(j, 0)? as i64;
    b.q("length_M_mod_JM", len);
    let eps0 = dual_values(m, j, TERMWISE_N + 1)?;
    let expected: Vec<i64> = (0..=TERMWISE_N as i64).map(|n| len * binomial(n + d as i64, d) as i64).collect();
    b.check(Check::equal("eps0(n) = l(M/JM) C(n+d, d)", eps0, expected));
    let eps1 = ext1_values(m, j, TERMWISE_N + 1)?;
    b.check(Check::equal("eps1(n) = 0", eps1, vec![0; TERMWISE_N as usize + 1]));
    Ok(b)
}

/// A superficial element for `R` that also keeps the Ext maps of `M`
/// injective, and the reduced instance.
fn superficial_reduction<S: Scalar>(
    inst: &Instance<S>,
    cfg: &Config,
    regular_on: Option<&FPModule<S>>,
) -> Result<(Polynomial<S>, Instance<S>, Option<usize>, Vec<String>), DualError> {
    let ring = inst.ring();
    let mut opts = SuperficialOptions::for_ring(ring);
    opts.ext_modules.push(inst.module.clone());
    if let Some(l) = regular_on {
        opts.require_regular = true;
        if !is_zero_module(l)? {
            opts.protected.push(l.clone());
        }
    }
    let sup = superficial_element(ring, &inst.ideal, &opts, cfg)?;
    let notes = sup.checks.iter().map(|c| format!("{}: {}", c.name, c.lhs)).collect();
    let reduced = reduce_by(&inst.module, &sup.x)?;
    let ideal: Vec<Polynomial<S>> = inst.ideal.iter().map(|f| reduced.ring().reduce(f)).collect();
    let desc = format!("{} mod x = {}", inst.description, ring.poly().format(&sup.x));
    let start = sup.ext_start.max(Some(sup.c));
    Ok((sup.x, Instance::new(reduced, ideal, desc), start, notes))
}

fn difference_identity<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    check_dual_hypotheses(&inst.module, &inst.ideal)?;
    if inst.ring().dim() == 0 {
        return Err(DualError::HypothesesUnmet("positive dimension required".into()));
    }
    let (x, red, start, notes) = superficial_reduction(inst, cfg, None)?;
    b.note(format!("x = {}", inst.ring().poly().format(&x)));
    b.witness.extend(notes);
    let fm = dual_hilbert_coefficients(&inst.module, &inst.ideal, cfg)?;
    let fnr = dual_hilbert_coefficients(&red.module, &red.ideal, cfg)?;
    let post = (fm.function.postulation + 1).max(fnr.function.postulation).max(start.unwrap_or(0));
    let top = (fm.function.values.len().max(fnr.function.values.len())).max(post + 4) as u32;
    let em = dual_values(&inst.module, &inst.ideal, top)?;
    let en = dual_values(&red.module, &red.ideal, top)?;
    b.q("postulation", post as i64);
    let lhs: Vec<i64> = (post..top as usize).map(|n| em[n] - if n == 0 { 0 } else { em[n - 1] }).collect();
    let rhs: Vec<i64> = (post..top as usize).map(|n| en[n]).collect();
    b.check(Check::equal(format!("eps0_M(n) - eps0_M(n-1) = eps0_N(n) for n in [{post}, {})", top), lhs, rhs));
    Ok(b)
}

fn coefficient_invariance<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    check_dual_hypotheses(&inst.module, &inst.ideal)?;
    let d = inst.ring().dim();
    if d == 0 {
        return Err(DualError::HypothesesUnmet("positive dimension required".into()));
    }
    let c = dual_hilbert_coefficients(&inst.module, &inst.ideal, cfg)?;
    let mut xs = Vec::new();
    for k in 0..INVARIANCE_DRAWS {
        let sub = Config { seed: cfg.seed.wrapping_add(k), ..*cfg };
        let (x, red, _, _) = superficial_reduction(inst, &sub, None)?;
        let cn = dual_hilbert_coefficients(&red.module, &red.ideal, cfg)?;
        let text = inst.ring().poly().format(&x);
        b.note(format!("x{k} = {text}"));
        for i in 0..d {
            b.check(Check::equal(format!("c{i}(N) = c{i}(M) for x{k}"), cn.coefficients[i], c.coefficients[i]));
        }
        xs.push(x);
    }
    xs.sort_by_key(|x| format!("{x:?}"));
    xs.dedup();
    b.q("distinct_elements", xs.len() as i64);
    b.check(Check::equal("distinct superficial elements", xs.len(), INVARIANCE_DRAWS as usize));
    for (i, v) in c.coefficients.iter().enumerate().take(d) {
        b.q(&format!("c{i}"), *v);
    }
    Ok(b)
}

fn ext1_series<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    let (m, i) = (&inst.module, &inst.ideal);
    check_dual_hypotheses(m, i)?;
    let ring = inst.ring();
    let d = ring.dim();
    let l = m.syzygy_module()?;
    let mu = m.num_generators()? as i64;
    let count = TERMWISE_N + 1;
    let e1 = ext1_values(m, i, count)?;
    let em = dual_values(m, i, count)?;
    let el = if is_zero_module(&l)? { vec![0; count as usize] } else { dual_values(&l, i, count)? };
    let h: Vec<i64> = (0..count).map(|n| Ok(ring.truncation(i, n + 1)?.dim() as i64)).collect::<Result<_, DualError>>()?;
    let rhs: Vec<i64> = (0..count as usize).map(|n| em[n] - mu * h[n] + el[n]).collect();
    b.check(Check::equal("eps1(n) = eps0_M(n) - mu h(n) + eps0_L(n)", e1.clone(), rhs));

    let cm = dual_hilbert_coefficients(m, i, cfg)?;
    let cl = dual_coefficients(&l, i, cfg)?;
    let hw = hilbert_coefficients(&FPModule::free(ring, 1), i, cfg)?;
    let ext = ext1_dual_function(m, i, cfg)?;
    let mut p = cm.numerator.sub(&hw.numerator.scale(mu));
    if let Some(cl) = &cl {
        p = p.add(&cl.numerator);
    }
    b.check(Check::equal("numerator identity f_M - mu h + f_L", ext.numerator.coefficients.clone(), p.coefficients.clone()));
    let e1w = hw.coefficients[1];
    let (c1m, c1l) = (cm.coefficients[1], coefficient(&cl, 1));
    b.q("mu", mu);
    b.q("e1_omega", e1w);
    b.q("c1_M", c1m);
    b.q("c1_L", c1l);
    if d >= 1 {
        let lead = -p.taylor_at_one(1);
        b.check(Check::equal("p(1) = 0", p.taylor_at_one(0), 0));
        b.check(Check::equal("leading coefficient of eps1 = mu e1 - c1(M) - c1(L)", lead, mu * e1w - c1m - c1l));
    }
    b.check(Check::at_most("c1(M) + c1(L) <= mu e1(omega)", c1m + c1l, mu * e1w));
    Ok(b)
}

fn freeness<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    require_maximal(inst)?;
    let (m, i) = (&inst.module, &inst.ideal);
    check_dual_hypotheses(m, i)?;
    let ring = inst.ring();
    let d = ring.dim();
    if d == 0 {
        return Err(DualError::HypothesesUnmet("positive dimension required".into()));
    }
    let free = m.is_free()?;
    let ext = ext1_dual_function(m, i, cfg)?;
    let zero = ext.function.is_eventually_zero();
    let low = ext.function.degree.is_none_or(|k| k + 1 < d);
    let l = m.syzygy_module()?;
    let mu = m.num_generators()? as i64;
    let e1w = hilbert_coefficients(&FPModule::free(ring, 1), i, cfg)?.coefficients[1];
    let c1m = dual_hilbert_coefficients(m, i, cfg)?.coefficients[1];
    let c1l = coefficient(&dual_coefficients(&l, i, cfg)?, 1);
    let identity = c1m + c1l == mu * e1w;
    b.q("free", free as i64);
    b.q("eps1_degree", ext.function.degree.map_or(-1, |k| k as i64));
    b.q("mu", mu);
    b.q("c1_M", c1m);
    b.q("c1_L", c1l);
    b.q("e1_omega", e1w);
    if let Some(c) = ext.function.eventual_constant() {
        b.q("eps1_eventual", c);
    }
    b.check(Check::equal("(a) free <=> (b) eps1 = 0", free, zero));
    b.check(Check::equal("(a) free <=> (c) deg eps1 < d - 1", free, low));
    b.check(Check::equal("(a) free <=> (d) c1(M) + c1(L) = mu e1(omega)", free, identity));
    Ok(b)
}

fn zero_dimensional<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    require_artinian_gorenstein(inst.ring())?;
    require_maximal(inst)?;
    let rep = zero_dim_report(&inst.module, cfg)?;
    let c = dual_hilbert_coefficients(&inst.module, &inst.ideal, cfg)?;
    b.q("r", rep.r as i64);
    b.q("e0", rep.e0);
    b.q("c1", rep.c1);
    for (n, a) in rep.alpha.iter().enumerate() {
        b.q(&format!("alpha{n}"), *a);
    }
    // f(t) = (1 - t) Σ α_n t^n + e0 t^r
    let mut f = vec![0i64; rep.r + 1];
    for (n, a) in rep.alpha.iter().enumerate() {
        f[n] += a;
        f[n + 1] -= a;
    }
    f[rep.r] += rep.e0;
    while f.last() == Some(&0) {
        f.pop();
    }
    b.check(Check::equal("c0 = e0", c.coefficients[0], rep.e0));
    b.check(Check::equal("numerator = (1-t) sum alpha_n t^n + e0 t^r", c.numerator.coefficients.clone(), f));
    b.check(Check::equal("c1 = r e0 - sum alpha_n", rep.c1_series, rep.c1));
    Ok(b)
}

/// Cut down by `d` successive superficial elements to an Artinian instance.
fn artinian_reduction<S: Scalar>(inst: &Instance<S>, cfg: &Config, regular: bool) -> Result<(Instance<S>, Vec<String>), DualError> {
    let mut cur = inst.clone();
    let mut notes = Vec::new();
    for k in 0..inst.ring().dim() {
        let sub = Config { seed: cfg.seed.wrapping_add(k as u64), ..*cfg };
        let l = if regular { Some(cur.module.syzygy_module()?) } else { None };
        let (x, next, _, _) = superficial_reduction(&cur, &sub, l.as_ref())?;
        let x = cur.ring().poly().format(&x);
        notes.push(if regular {
            format!("x{} = {x} with x* regular on G(R) and G(L) (window-verified)", k + 1)
        } else {
            format!("x{} = {x}", k + 1)
        });
        cur = next;
    }
    Ok((cur, notes))
}

fn c1_descends<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    require_graded_cm(inst)?;
    check_dual_hypotheses(&inst.module, &inst.ideal)?;
    let c1 = dual_hilbert_coefficients(&inst.module, &inst.ideal, cfg)?.coefficients[1];
    let (red, notes) = artinian_reduction(inst, cfg, false)?;
    b.witness.extend(notes);
    let c1n = dual_hilbert_coefficients(&red.module, &red.ideal, cfg)?.coefficients[1];
    b.q("c1_M", c1);
    b.q("c1_N", c1n);
    b.check(Check::at_least("c1(M) >= c1(N)", c1, c1n));
    Ok(b)
}

fn hom_bound<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    require_graded_cm(inst)?;
    check_dual_hypotheses(&inst.module, &inst.ideal)?;
    let ring = inst.ring();
    let d = ring.dim();
    let r = minimal_reduction(ring, &inst.ideal, cfg.seed)?.r;
    let (red, notes) = artinian_reduction(inst, cfg, false)?;
    b.witness.extend(notes);
    b.q("r", r as i64);
    for n in 1..=r as i64 {
        let lhs = if n == 0 { 0 } else { hom_length(&red.module, &*red.ring().truncation(&red.ideal, n as u32)?)? as i64 };
        let mut rhs = 0i64;
        for j in 0..=d {
            let k = n - j as i64;
            if k <= 0 {
                continue;
            }
            let t = ring.truncation(&inst.ideal, k as u32)?;
            rhs += binomial(d as i64, j) as i64 * ext_lengths(j, &inst.module, &t)?[j] as i64;
        }
        b.check(Check::at_most(format!("l(Hom(N, S/J^{n})) <= binomial Ext sum"), lhs, rhs));
    }
    if r == 0 {
        b.check(Check::new("no values of n to check (r = 0)", "0", "0", true));
    }
    Ok(b)
}

fn c1_lower_bound<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    require_graded_cm(inst)?;
    let c = dual_hilbert_coefficients(&inst.module, &inst.ideal, cfg)?;
    let r = minimal_reduction(inst.ring(), &inst.ideal, cfg.seed)?.r;
    let e0 = hilbert_coefficients(&inst.module, &inst.ideal, cfg)?.coefficients[0];
    let p = phi(&inst.module, &inst.ideal, r)?;
    b.q("r", r as i64);
    b.q("e0", e0);
    b.q("phi", p);
    b.q("c1", c.coefficients[1]);
    b.check(Check::at_least("c1 >= r e0 - phi", c.coefficients[1], r as i64 * e0 - p));
    Ok(b)
}

fn phi_descends<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    require_graded_cm(inst)?;
    check_dual_hypotheses(&inst.module, &inst.ideal)?;
    if inst.ring().dim() == 0 {
        return Err(DualError::HypothesesUnmet("positive dimension required".into()));
    }
    let r = minimal_reduction(inst.ring(), &inst.ideal, cfg.seed)?.r;
    let (x, red, _, _) = superficial_reduction(inst, cfg, None)?;
    b.note(format!("x = {}", inst.ring().poly().format(&x)));
    b.note("both sides use the reduction number of I");
    let p = phi(&inst.module, &inst.ideal, r)?;
    let p1 = phi(&red.module, &red.ideal, r)?;
    b.q("r", r as i64);
    b.q("phi", p);
    b.q("phi_reduced", p1);
    b.check(Check::at_least("phi(M) >= phi(M/xM)", p, p1));
    Ok(b)
}

fn exact_difference<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    require_maximal(inst)?;
    check_dual_hypotheses(&inst.module, &inst.ideal)?;
    if inst.ring().dim() == 0 {
        return Err(DualError::HypothesesUnmet("positive dimension required".into()));
    }
    let l = inst.module.syzygy_module()?;
    let (x, red, _, notes) = superficial_reduction(inst, cfg, Some(&l))?;
    b.note(format!("x = {} with x* regular on G(R) and G(L) (window-verified)", inst.ring().poly().format(&x)));
    b.witness.extend(notes);
    let count = TERMWISE_N + 1;
    let em = dual_values(&inst.module, &inst.ideal, count)?;
    let en = dual_values(&red.module, &red.ideal, count)?;
    let lhs: Vec<i64> = (0..count as usize).map(|n| em[n] - if n == 0 { 0 } else { em[n - 1] }).collect();
    b.check(Check::equal("eps0_M(n) - eps0_M(n-1) = eps0_N(n) for all n >= 0", lhs, en));
    Ok(b)
}

/// The exponent `e` in `D(k, t) = Σ_{i<r} D_i t^i + t^e / (1 - t)`: values
/// from degree `r` on are zero up to `e` and one afterwards. `None` when
/// the sampled values have another shape.
fn tail_exponent(values: &[i64], r: usize) -> Option<usize> {
    let tail = values.get(r..)?;
    let zeros = tail.iter().take_while(|&&v| v == 0).count();
    tail[zeros..].iter().all(|&v| v == 1).then_some(r + zeros)
}

fn residue_field_series<S: Scalar>(inst: &Instance<S>) -> Result<Body, DualError> {
    let mut b = Body::default();
    let ring = inst.ring();
    require_artinian_gorenstein(ring)?;
    let r = nilpotency(ring)?;
    let k = FPModule::residue_field(ring);
    let vars = ring.poly().vars();
    b.q("r", r as i64);
    for i in 1..=r as u32 + 2 {
        let hom = hom_length(&k, &*ring.truncation(&vars, i)?)? as i64;
        if i as usize <= r {
            let mu1 = bass_mu1(ring, i)? as i64;
            b.q(&format!("mu1_{i}"), mu1);
            b.check(Check::equal(format!("l(Hom(k, S/n^{i})) = mu1(n^{i})"), hom, mu1));
        } else {
            b.check(Check::equal(format!("l(Hom(k, S/n^{i})) = 1"), hom, 1));
        }
    }
    let series = dual_values(&k, &vars, r as u32 + 4)?;
    match tail_exponent(&series, r) {
        Some(e) => {
            b.q("tail_exponent", e as i64);
            b.note(format!("D(k, t) has tail t^{e}/(1-t); the form t^(r+1)/(1-t) {}", if e == r + 1 { "matches" } else { "does not match" }));
        }
        None => b.note("D(k, t) has no tail of the form t^e/(1-t)"),
    }
    Ok(b)
}

fn ulrich_series<S: Scalar>(inst: &Instance<S>, cfg: &Config) -> Result<Body, DualError> {
    let mut b = Body::default();
    require_maximal(inst)?;
    check_dual_hypotheses(&inst.module, &inst.ideal)?;
    let ring = inst.ring();
    let d = ring.dim();
    let u = ulrich_check(&inst.module, cfg)?;
    b.q("e0", u.e0);
    b.q("mu", u.mu);
    if !u.ulrich {
        return Err(DualError::HypothesesUnmet("module is not Ulrich".into()));
    }
    let (red, notes) = artinian_reduction(inst, cfg, true)?;
    b.witness.extend(notes);
    let sbar = red.ring().clone();
    let len = red.module.to_finite()?.dim() as i64;
    b.check(Check::equal("JM = mM (l(M/JM) = mu)", len, u.mu));
    let count = TERMWISE_N + 1;
    let dm = dual_values(&inst.module, &inst.ideal, count)?;
    let k = FPModule::residue_field(&sbar);
    let dk = dual_values(&k, &sbar.poly().vars(), count)?;
    let lhs: Vec<i64> = (0..count as usize)
        .map(|n| (0..=d.min(n)).map(|j| if j % 2 == 0 { 1 } else { -1 } * binomial(d as i64, j) as i64 * dm[n - j]).sum())
        .collect();
    let rhs: Vec<i64> = dk.iter().map(|v| u.mu * v).collect();
    b.check(Check::equal("D(M,t)(1-t)^d = mu D(k,t) termwise", lhs, rhs));
    let r = nilpotency(&sbar)?;
    b.q("r", r as i64);
    let Some(e) = tail_exponent(&dk, r) else {
        b.check(Check::new("D(k, t) has a tail t^e/(1-t)", format!("{dk:?}"), "ones from some degree on", false));
        return Ok(b);
    };
    b.q("tail_exponent", e as i64);
    b.note(format!("tail t^{e}/(1-t); the form t^(r+1)/(1-t) {}", if e == r + 1 { "matches" } else { "does not match" }));
    // μ [(1 - t) Σ_{i<r} μ1(n^(i+1)) t^i + t^e] against the numerator of D(M, t)
    let mut closed = vec![0i64; e.max(r) + 1];
    for i in 0..r {
        let mu1 = bass_mu1(&sbar, i as u32 + 1)? as i64;
        closed[i] += u.mu * mu1;
        closed[i + 1] -= u.mu * mu1;
    }
    closed[e] += u.mu;
    while closed.last() == Some(&0) {
        closed.pop();
    }
    let num = dual_hilbert_coefficients(&inst.module, &inst.ideal, cfg)?.numerator;
    b.check(Check::equal("numerator of D(M, t) = mu [(1-t) sum mu1(n^(i+1)) t^i + t^e]", num.coefficients, closed));
    Ok(b)
}

fn delta_identity<S: Scalar>(inst: &Instance<S>) -> Result<Body, DualError> {
    let mut b = Body::default();
    require_maximal(inst)?;
    let ring = inst.ring();
    if !ring.is_gorenstein() {
        return Err(RingError::NotGorenstein.into());
    }
    let mu = inst.module.num_generators()? as i64;
    b.q("mu", mu);
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for n in 0..=TERMWISE_N {
        lhs.push(delta(&inst.module, &inst.ideal, n)?);
        let graded_piece = ring.truncation(&inst.ideal, n + 1)?.dim() - ring.truncation(&inst.ideal, n)?.dim();
        rhs.push(mu * graded_piece as i64);
    }
    b.check(Check::equal("delta(M, n) = mu l(m^n / m^(n+1))", lhs, rhs));
    Ok(b)
}

fn matlis<S: Scalar>(inst: &Instance<S>) -> Result<Body, DualError> {
    let mut b = Body::default();
    let ring = inst.ring();
    require_artinian_gorenstein(ring)?;
    let s = ring.as_finite_module()?;
    let hom = hom_length(&inst.module, &s)? as i64;
    let len = inst.module.to_finite()?.dim() as i64;
    b.q("hom_length", hom);
    b.q("length", len);
    b.check(Check::equal("l(Hom(N, S)) = l(N)", hom, len));
    Ok(b)
}
