//! Dense exact linear algebra.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<S> {
    pub matrix: Matrix<S>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Build from rows; all rows must share a length. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::Dimension(format!("row of length {} (expected {})", r.len(), cols)));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| S::from_i64(v)).collect()).collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn into_rows(self) -> Vec<Vec<S>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(true);
        Rref { rank: pivots.len(), pivots, matrix: m }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce_in_place(false).len()
    }

    /// Gaussian elimination; with `full` the result is reduced (zeros above
    /// pivots, pivots equal to one).
    fn reduce_in_place(&mut self, full: bool) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            let range: Box<dyn Iterator<Item = usize>> = if full { Box::new(0..rows) } else { Box::new(r + 1..rows) };
            for i in range {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..cols {
                    if !self[(r, j)].is_zero() {
                        let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right null space `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -matrix[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `A x = b`.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = matrix[(r, self.cols)].clone();
        }
        Ok(x)
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

/// Row-reduce a list of vectors of common length `n`; returns the nonzero
/// reduced rows (fully reduced) and their pivot columns.
pub fn row_basis<S: Scalar>(vectors: Vec<Vec<S>>, n: usize) -> (Vec<Vec<S>>, Vec<usize>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let m = Matrix::from_rows(vectors, n).expect("vectors share a length");
    let Rref { matrix, rank, pivots } = m.rref();
    let mut rows = matrix.into_rows();
    rows.truncate(rank);
    (rows, pivots)
}

/// Rank of a set of vectors of common length `n`.
pub fn rank_of<S: Scalar>(vectors: Vec<Vec<S>>, n: usize) -> usize {
    if vectors.is_empty() || n == 0 {
        return 0;
    }
    Matrix::from_rows(vectors, n).expect("vectors share a length").rank()
}

/// Incrementally built echelon basis of a subspace of `k^n`.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    n: usize,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<S>) -> Vec<S> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
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

    /// Add `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: Vec<S>) -> bool {
        assert_eq!(v.len(), self.n);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().unwrap();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use num_traits::Zero;

    type F = Fp<32003>;

    #[test]
    fn rref_examples() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.rref().rank, 1);
        let id = Matrix::<Rational>::identity(3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);
        let b = Matrix::<F>::from_i64_rows(&[&[1, 1, 1], &[0, 1, 1]]);
        let r = b.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 1]]);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![Rational::from_i64(-1), Rational::from_i64(1)]);
        assert!(Matrix::<F>::identity(2).kernel().is_empty());
        assert_eq!(Matrix::<F>::zeros(2, 3).kernel().len(), 3);
    }

    #[test]
    fn incremental_echelon() {
        let mut e = Echelon::<F>::new(3);
        assert!(e.insert(vec![F::new(1), F::new(2), F::new(0)]));
        assert!(!e.insert(vec![F::new(2), F::new(4), F::new(0)]));
        assert!(e.insert(vec![F::new(0), F::new(1), F::new(1)]));
        assert!(e.contains(&[F::new(1), F::new(3), F::new(1)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::<Rational>::identity(2);
        let x = id.solve(&[Rational::from_i64(3), Rational::from_i64(5)]).unwrap();
        assert_eq!(x, vec![Rational::from_i64(3), Rational::from_i64(5)]);
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 1]]);
        let x = a.solve(&[Rational::from_i64(2)]).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![Rational::from_i64(2)]);
        let c = Matrix::<Rational>::from_i64_rows(&[&[1], &[0]]);
        assert_eq!(c.solve(&[Rational::zero(), Rational::from_i64(1)]), Err(LinalgError::Inconsistent));
    }
}
