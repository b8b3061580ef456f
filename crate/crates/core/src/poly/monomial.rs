use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Self {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables occurring in the monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Total monomial orders.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    /// Pure lexicographic, first variable largest.
    Lex,
    /// Graded lexicographic.
    GradedLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => cmp_lex(a, b),
            MonomialOrder::GradedLex => a.degree().cmp(&b.degree()).then_with(|| cmp_lex(a, b)),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        // a smaller exponent in the last differing variable wins
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::GradedLex => "grlex",
        }
    }

    pub fn is_degree_compatible(self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }
}

fn cmp_lex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

/// All monomials of total degree `deg` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..5, 3).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![Just(MonomialOrder::Grevlex), Just(MonomialOrder::Lex), Just(MonomialOrder::GradedLex)]
    }

    proptest! {
        #[test]
        fn orders_are_monomial_orders(a in mono(), b in mono(), c in mono(), ord in order()) {
            let ab = ord.compare(&a, &b);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ab, ord.compare(&b, &a).reverse());
            prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_ne!(ord.compare(&Monomial::one(3), &a), Ordering::Greater);
        }
    }

    #[test]
    fn grevlex_small_cases() {
        let x2 = Monomial::from_exponents(&[2, 0]);
        let xy = Monomial::from_exponents(&[1, 1]);
        let y2 = Monomial::from_exponents(&[0, 2]);
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.compare(&x2, &xy), Ordering::Greater);
        assert_eq!(o.compare(&xy, &y2), Ordering::Greater);
        // x*z^0*... versus y^2 in three variables
        let a = Monomial::from_exponents(&[1, 0, 1]);
        let b = Monomial::from_exponents(&[0, 2, 0]);
        assert_eq!(o.compare(&a, &b), Ordering::Less);
        assert_eq!(MonomialOrder::GradedLex.compare(&a, &b), Ordering::Greater);
    }

    #[test]
    fn degree_enumeration() {
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
    }
}
