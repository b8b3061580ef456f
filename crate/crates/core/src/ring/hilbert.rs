//! Hilbert series of monomial ideals and modules.

use crate::poly::Monomial;

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `P / I` for
/// the monomial ideal `I` in `n` variables; coefficients from degree 0 up.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    numerator(gens)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // generators coprime to all others split off as factors 1 - t^deg
    let mut factor = vec![1i64];
    let mut rest = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if gens.iter().enumerate().all(|(j, h)| i == j || g.coprime(h)) {
            factor = mul(&factor, &one_minus_t_pow(g.degree()));
        } else {
            rest.push(g.clone());
        }
    }
    if rest.is_empty() {
        return factor;
    }
    let nvars = rest[0].nvars();
    let pivot = (0..nvars).max_by_key(|&v| rest.iter().filter(|g| g.exponents()[v] > 0).count()).unwrap();
    let x = Monomial::var(pivot, nvars);
    // N(I) = N(I + (x)) + t N(I : x)
    let mut plus: Vec<Monomial> = rest.iter().filter(|g| g.exponents()[pivot] == 0).cloned().collect();
    plus.push(x.clone());
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|g| {
            let mut e = g.exponents().to_vec();
            e[pivot] = e[pivot].saturating_sub(1);
            Monomial::from_exponents(&e)
        })
        .collect();
    let a = numerator(minimalize(plus));
    let b = numerator(minimalize(colon));
    let mut tb = vec![0i64];
    tb.extend(b);
    mul(&factor, &add(&a, &tb))
}

fn one_minus_t_pow(d: u32) -> Vec<i64> {
    let mut v = vec![0i64; d as usize + 1];
    v[0] = 1;
    v[d as usize] -= 1;
    v
}

pub(crate) fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(out)
}

pub(crate) fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

/// Write `N(t) = (1 - t)^k h(t)` with `h(1) != 0`; returns `(k, h)`. The
/// zero polynomial returns `(0, [0])`.
pub fn factor_one_minus_t(n: &[i64]) -> (usize, Vec<i64>) {
    let mut h = trim(n.to_vec());
    if h == [0] {
        return (0, h);
    }
    let mut k = 0;
    while h.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t): q_i = sum_{j <= i} h_j
        let mut q = Vec::with_capacity(h.len() - 1);
        let mut acc = 0;
        for &c in &h[..h.len() - 1] {
            acc += c;
            q.push(acc);
        }
        h = trim(q);
        k += 1;
    }
    (k, h)
}

/// Summary of a Hilbert series `h(t) t^shift / (1 - t)^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    /// Krull dimension (pole order at `t = 1`); `None` for the zero module.
    pub dim: Option<usize>,
    /// Reduced numerator `h`, multiplied by `t^shift`.
    pub numerator: Vec<i64>,
    pub shift: i64,
}

impl HilbertSeries {
    /// From a numerator over `(1 - t)^nvars` whose coefficient list starts at
    /// degree `shift`.
    pub fn from_numerator(nvars: usize, num: &[i64], shift: i64) -> Self {
        let (k, h) = factor_one_minus_t(num);
        if h == [0] {
            return HilbertSeries { dim: None, numerator: h, shift: 0 };
        }
        HilbertSeries { dim: Some(nvars - k), numerator: h, shift }
    }

    pub fn multiplicity(&self) -> i64 {
        self.numerator.iter().sum()
    }

    /// Values of the Hilbert function at degrees `shift..shift + count`.
    pub fn values(&self, count: usize) -> Vec<i64> {
        let d = self.dim.unwrap_or(0);
        let mut series = vec![0i64; count];
        for (i, c) in self.numerator.iter().enumerate().take(count) {
            series[i] = *c;
        }
        for _ in 0..d {
            for i in 1..count {
                series[i] += series[i - 1];
            }
        }
        series
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn numerators() {
        assert_eq!(hilbert_numerator(&[]), vec![1]);
        // (x^2, y^2): (1 - t^2)^2
        assert_eq!(hilbert_numerator(&[m(&[2, 0]), m(&[0, 2])]), vec![1, 0, -2, 0, 1]);
        // (x^2, xy): 1 - 2t^2 + t^3
        assert_eq!(hilbert_numerator(&[m(&[2, 0]), m(&[1, 1])]), vec![1, 0, -2, 1]);
        // (x, y)^2 in two variables: ℓ = 3
        let n = hilbert_numerator(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        let hs = HilbertSeries::from_numerator(2, &n, 0);
        assert_eq!(hs.dim, Some(0));
        assert_eq!(hs.multiplicity(), 3);
    }

    #[test]
    fn series_invariants() {
        let hs = HilbertSeries::from_numerator(2, &hilbert_numerator(&[m(&[2, 0])]), 0);
        assert_eq!(hs.dim, Some(1));
        assert_eq!(hs.multiplicity(), 2);
        assert_eq!(hs.values(4), vec![1, 2, 2, 2]);
        let free = HilbertSeries::from_numerator(3, &[1], 0);
        assert_eq!(free.values(4), vec![1, 3, 6, 10]);
    }
}
