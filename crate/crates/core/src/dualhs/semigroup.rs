use std::collections::{BTreeSet, HashMap};

use super::DualError;
use crate::poly::{monomials_of_degree, MonomialOrder, PolyRing, Polynomial};
use crate::ring::{FiniteLengthModule, Operator, QuotientRing};
use crate::scalar::Scalar;

/// The algebra `k[t^a : a ∈ gens] / (t^b)` built from its multiplication
/// table on the monomials `t^s` that survive.
#[derive(Clone, Debug)]
pub struct SemigroupQuotient {
    pub generators: Vec<u32>,
    pub modulus: u32,
    /// Exponents of the surviving monomials, ascending.
    pub basis: Vec<u32>,
}

impl SemigroupQuotient {
    pub fn new(generators: &[u32], modulus: u32) -> Result<Self, DualError> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(DualError::Semigroup("generators must be positive".into()));
        }
        let g = generators.iter().fold(0, |a, &b| gcd(a, b));
        if g != 1 {
            return Err(DualError::Semigroup(format!("generators have common factor {g}")));
        }
        let max = *generators.iter().max().unwrap();
        // every exponent at or beyond the conductor lies in the semigroup, so
        // exponents up to modulus + (a run of `max` consecutive members) suffice
        let mut members = vec![true];
        let mut run = 0;
        let mut s = 0;
        let mut conductor = None;
        while conductor.is_none() || (s as u64) < modulus as u64 + conductor.unwrap() as u64 + max as u64 {
            s += 1;
            let inside = generators.iter().any(|&a| s >= a && members[(s - a) as usize]);
            members.push(inside);
            run = if inside { run + 1 } else { 0 };
            if conductor.is_none() && run >= max {
                conductor = Some(s + 1 - max);
            }
        }
        let contains = |s: i64| s >= 0 && members[s as usize];
        if !contains(modulus as i64) {
            return Err(DualError::Semigroup(format!("t^{modulus} is not in the semigroup ring")));
        }
        let bound = modulus + conductor.unwrap();
        let basis = (0..bound).filter(|&s| contains(s as i64) && !contains(s as i64 - modulus as i64)).collect();
        Ok(SemigroupQuotient { generators: generators.to_vec(), modulus, basis })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// The multiplication table, one variable per generator.
    pub fn table<S: Scalar>(&self) -> FiniteLengthModule<S> {
        let index: HashMap<u32, usize> = self.basis.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let ops = self
            .generators
            .iter()
            .map(|&a| {
                Operator::new(
                    self.basis
                        .iter()
                        .map(|&s| index.get(&(s + a)).map(|&k| vec![(k, S::one())]).unwrap_or_default())
                        .collect(),
                )
            })
            .collect();
        let labels = self.basis.iter().map(|s| if *s == 0 { "1".to_string() } else { format!("t^{s}") }).collect();
        FiniteLengthModule::new(self.generators.len(), ops, None, labels)
    }

    /// Exponents reachable as sums of exactly `k` generators, among the
    /// surviving basis.
    fn power_support(&self, k: usize) -> BTreeSet<u32> {
        let mut level: BTreeSet<u32> = [0].into();
        for _ in 0..k {
            level = level.iter().flat_map(|s| self.generators.iter().map(move |a| s + a)).filter(|s| self.basis.contains(s)).collect();
        }
        level
    }

    /// Whether `m^k ≠ 0`.
    pub fn power_nonzero(&self, k: usize) -> bool {
        !self.power_support(k).is_empty()
    }

    /// `dim m / m^2`.
    pub fn embedding_dimension(&self) -> usize {
        let mut m2 = BTreeSet::new();
        let mut k = 2;
        loop {
            let level = self.power_support(k);
            if level.is_empty() {
                break;
            }
            m2.extend(level);
            k += 1;
        }
        self.basis.len() - 1 - m2.len()
    }

    /// A presentation `k[x_1..x_g] / K` with `K` the kernel of
    /// `x_i ↦ t^(a_i)`, with variables named `x1, x2, ...`.
    pub fn quotient_ring<S: Scalar>(&self) -> Result<QuotientRing<S>, DualError> {
        let n = self.generators.len();
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let poly = PolyRing::<S>::with_vars(&names, MonomialOrder::Grevlex)
            .map_err(|e| DualError::Semigroup(e.to_string()))?;
        // monomials of degree > top vanish; below that, the kernel is
        // spanned by vanishing monomials and differences of equal images
        let top = (1..).find(|&k| !self.power_nonzero(k)).unwrap();
        let mut rels = Vec::new();
        for deg in 1..=top as u32 {
            let mut by_image: HashMap<u32, Polynomial<S>> = HashMap::new();
            for m in monomials_of_degree(n, deg) {
                let e: u32 = (0..n).map(|i| m.exponents()[i] * self.generators[i]).sum();
                let f = poly.monomial(m);
                if !self.basis.contains(&e) {
                    rels.push(f);
                } else if let Some(first) = by_image.get(&e) {
                    rels.push(f.sub(first, poly.order()));
                } else {
                    by_image.insert(e, f);
                }
            }
        }
        Ok(QuotientRing::new(&poly, &rels)?)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
