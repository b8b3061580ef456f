use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FitError {
    #[error("need at least {need} values to fit a polynomial of degree at most {d_max}, got {got}")]
    TooFewValues { need: usize, got: usize, d_max: usize },
    #[error("postulation not reached: the last {window} values do not agree with a polynomial of degree at most {d_max}")]
    PostulationNotReached { window: usize, d_max: usize },
    #[error("values disagree with the numerator past its degree")]
    InconsistentNumerator,
}

/// Generalized binomial coefficient `C(m, k)` for any integer `m`.
pub fn binomial(m: i64, k: usize) -> i128 {
    let mut acc: i128 = 1;
    for j in 0..k as i128 {
        acc = acc * (m as i128 - j) / (j + 1);
    }
    acc
}

/// An integer-valued function of `n ≥ 0`, eventually polynomial, together
/// with its fitted polynomial written as
/// `P(n) = Σ_i (-1)^i a_i C(n + d - i, d - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalFunction {
    pub values: Vec<i64>,
    /// `None` when the function is eventually zero.
    pub degree: Option<usize>,
    pub coefficients: Vec<i64>,
    pub postulation: usize,
    pub window: usize,
}

impl NumericalFunction {
    pub fn polynomial_value(&self, n: i64) -> i64 {
        let Some(d) = self.degree else {
            return 0;
        };
        let mut acc: i128 = 0;
        for (i, a) in self.coefficients.iter().enumerate() {
            let term = *a as i128 * binomial(n + (d - i) as i64, d - i);
            acc += if i % 2 == 0 { term } else { -term };
        }
        acc as i64
    }

    pub fn is_eventually_zero(&self) -> bool {
        self.degree.is_none()
    }

    /// Eventual constant value, for functions of degree at most zero.
    pub fn eventual_constant(&self) -> Option<i64> {
        match self.degree {
            None => Some(0),
            Some(0) => Some(self.coefficients[0]),
            _ => None,
        }
    }
}

fn differences(v: &[i128]) -> Vec<i128> {
    v.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Fit the least-degree polynomial agreeing with a terminal window of
/// `d_max + 2` values.
pub fn fit_numerical(values: &[i64], d_max: usize) -> Result<NumericalFunction, FitError> {
    let window = d_max + 2;
    if values.len() < window {
        return Err(FitError::TooFewValues { need: window, got: values.len(), d_max });
    }
    let tail: Vec<i128> = values[values.len() - window..].iter().map(|&v| v as i128).collect();
    let mut diff = tail.clone();
    for _ in 0..=d_max {
        diff = differences(&diff);
    }
    if diff.iter().any(|&x| x != 0) {
        return Err(FitError::PostulationNotReached { window, d_max });
    }
    // degree: highest order of nonvanishing difference on the window
    let mut degree = None;
    let mut diff = tail;
    for k in 0..=d_max {
        if diff.iter().any(|&x| x != 0) {
            degree = Some(k);
        }
        diff = differences(&diff);
    }
    let base = values.len() - window;
    let Some(d) = degree else {
        let postulation = values.iter().rposition(|&v| v != 0).map_or(0, |p| p + 1);
        return Ok(NumericalFunction { values: values.to_vec(), degree: None, coefficients: Vec::new(), postulation, window });
    };
    // Newton forward form anchored at `base`, then evaluated at 0..=d
    let mut newton = Vec::with_capacity(d + 1);
    let mut col: Vec<i128> = values[base..base + d + 1].iter().map(|&v| v as i128).collect();
    for _ in 0..=d {
        newton.push(col[0]);
        col = differences(&col);
    }
    let eval = |n: i64| -> i128 { newton.iter().enumerate().map(|(k, c)| c * binomial(n - base as i64, k)).sum() };
    let at: Vec<i128> = (0..=d as i64).map(eval).collect();
    // numerator g = (1 - t)^(d+1) Σ P(n) t^n, truncated at degree d
    let mut g = vec![0i128; d + 1];
    for (k, gk) in g.iter_mut().enumerate() {
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            *gk += sign * binomial((d + 1) as i64, j) * at[k - j];
        }
    }
    let coefficients = (0..=d).map(|i| g.iter().enumerate().map(|(k, gk)| gk * binomial(k as i64, i)).sum::<i128>() as i64).collect();
    let mut f = NumericalFunction { values: values.to_vec(), degree: Some(d), coefficients, postulation: 0, window };
    f.postulation = (0..values.len()).rev().find(|&n| values[n] != f.polynomial_value(n as i64)).map_or(0, |n| n + 1);
    Ok(f)
}

/// The numerator `f(t)` of `Σ H(n) t^n = f(t) / (1 - t)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesNumerator {
    pub coefficients: Vec<i64>,
    pub exponent: usize,
}

impl SeriesNumerator {
    /// Exact numerator from a value table whose entries agree with a
    /// polynomial of degree below `exponent` from `postulation` on.
    pub fn from_values(values: &[i64], postulation: usize, exponent: usize) -> Result<Self, FitError> {
        let mut coefficients = Vec::new();
        for k in 0..values.len() {
            let mut c: i128 = 0;
            for j in 0..=k.min(exponent) {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                c += sign * binomial(exponent as i64, j) * values[k - j] as i128;
            }
            if k >= postulation + exponent {
                if c != 0 {
                    return Err(FitError::InconsistentNumerator);
                }
            } else {
                coefficients.push(c as i64);
            }
        }
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        Ok(SeriesNumerator { coefficients, exponent })
    }

    /// `f^(i)(1) / i!`.
    pub fn taylor_at_one(&self, i: usize) -> i64 {
        self.coefficients.iter().enumerate().map(|(k, c)| *c as i128 * binomial(k as i64, i)).sum::<i128>() as i64
    }

    /// The first `count` coefficients of `f(t) / (1 - t)^e`.
    pub fn expand(&self, count: usize) -> Vec<i64> {
        let mut series: Vec<i128> = (0..count).map(|k| self.coefficients.get(k).copied().unwrap_or(0) as i128).collect();
        for _ in 0..self.exponent {
            for k in 1..count {
                series[k] += series[k - 1];
            }
        }
        series.into_iter().map(|x| x as i64).collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn scale(&self, s: i64) -> Self {
        SeriesNumerator { coefficients: self.coefficients.iter().map(|c| c * s).collect(), exponent: self.exponent }.trimmed()
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(self.exponent, other.exponent, "numerators over different denominators");
        let len = self.coefficients.len().max(other.coefficients.len());
        let coefficients = (0..len)
            .map(|k| self.coefficients.get(k).copied().unwrap_or(0) + sign * other.coefficients.get(k).copied().unwrap_or(0))
            .collect();
        SeriesNumerator { coefficients, exponent: self.exponent }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coefficients.last() == Some(&0) {
            self.coefficients.pop();
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fits_examples() {
        let f = fit_numerical(&[1, 3, 6, 10, 15], 2).unwrap();
        assert_eq!((f.degree, f.coefficients.clone(), f.postulation), (Some(2), vec![1, 0, 0], 0));
        let f = fit_numerical(&[2, 4, 6, 8, 10, 12], 1).unwrap();
        assert_eq!((f.degree, f.coefficients.clone(), f.postulation), (Some(1), vec![2, 0], 0));
        let f = fit_numerical(&[1, 3, 4, 4, 4, 4], 0).unwrap();
        assert_eq!((f.degree, f.coefficients.clone(), f.postulation), (Some(0), vec![4], 2));
        let f = fit_numerical(&[1, 3, 5, 7, 9], 1).unwrap();
        assert_eq!(f.coefficients, vec![2, 1]);
        let f = fit_numerical(&[3, 1, 0, 0, 0, 0], 2).unwrap();
        assert_eq!((f.degree, f.postulation), (None, 2));
        assert!(matches!(fit_numerical(&[1, 2, 4, 8, 16], 1), Err(FitError::PostulationNotReached { .. })));
        assert!(matches!(fit_numerical(&[1], 1), Err(FitError::TooFewValues { .. })));
    }

    #[test]
    fn numerators() {
        let n = SeriesNumerator::from_values(&[1, 2, 1, 1, 1, 1], 2, 1).unwrap();
        assert_eq!(n.coefficients, vec![1, 1, -1]);
        assert_eq!((n.taylor_at_one(0), n.taylor_at_one(1)), (1, -1));
        assert_eq!(n.expand(6), vec![1, 2, 1, 1, 1, 1]);
        let n = SeriesNumerator::from_values(&[2, 4, 6, 8, 10], 0, 2).unwrap();
        assert_eq!(n.coefficients, vec![2]);
        assert!(SeriesNumerator::from_values(&[1, 2, 4, 8, 16], 0, 1).is_err());
    }

    proptest! {
        #[test]
        fn fit_recovers_polynomials(coeffs in prop::collection::vec(-20i64..20, 1..4), prefix in prop::collection::vec(-50i64..50, 0..4)) {
            let d = coeffs.len() - 1;
            let p = |n: i64| -> i64 {
                coeffs.iter().enumerate().map(|(i, a)| {
                    let t = *a as i128 * binomial(n + (d - i) as i64, d - i);
                    if i % 2 == 0 { t } else { -t }
                }).sum::<i128>() as i64
            };
            let mut values: Vec<i64> = prefix.clone();
            for n in prefix.len()..prefix.len() + d + 6 {
                values.push(p(n as i64));
            }
            let f = fit_numerical(&values, 3).unwrap();
            for n in 0..values.len() as i64 {
                prop_assert_eq!(f.polynomial_value(n), p(n));
            }
            prop_assert!(f.postulation <= prefix.len());
            let num = SeriesNumerator::from_values(&values, f.postulation, 4).unwrap();
            prop_assert_eq!(num.expand(values.len()), values.clone());
            if let Some(deg) = f.degree {
                for i in 0..=deg {
                    prop_assert_eq!(SeriesNumerator::from_values(&values, f.postulation, deg + 1).unwrap().taylor_at_one(i), f.coefficients[i]);
                }
            }
        }
    }
}
