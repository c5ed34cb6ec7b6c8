//! Dense exact linear algebra over [`RadicalNumber`].
//!
//! Elimination pivots on the first nonzero entry; in exact arithmetic there
//! is nothing to gain from magnitude pivoting.

use std::fmt;

use crate::error::{Error, Result};
use crate::radix::{RadicalNumber, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RadicalNumber>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![RadicalNumber::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = RadicalNumber::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RadicalNumber>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(columns: &[Vec<RadicalNumber>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[RadicalNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<RadicalNumber> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RadicalNumber::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[RadicalNumber]) -> Vec<RadicalNumber> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn trace(&self) -> RadicalNumber {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row echelon form restricted to the first
    /// `pivot_cols` columns. Returns the pivot columns and the number of row
    /// swaps performed.
    fn reduce(&mut self, pivot_cols: usize) -> (Vec<usize>, usize) {
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                swaps += 1;
            }
            let inv = self[(r, c)].recip().expect("pivot is nonzero");
            for j in 0..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = &self[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<RadicalNumber> = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for (j, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        self[(i, j)] -= &(&factor * pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, swaps)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let (pivots, _) = m.reduce(self.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column with that
    /// column's entry equal to one.
    pub fn nullspace(&self) -> Vec<Vec<RadicalNumber>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![RadicalNumber::zero(); self.cols];
                x[f] = RadicalNumber::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -&r[(row, f)];
                }
                x
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = RadicalNumber::one();
        }
        let (pivots, _) = aug.reduce(n);
        if pivots.len() < n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> RadicalNumber {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        // Plain elimination (no back-substitution) tracking pivots.
        let mut m = self.clone();
        let n = self.rows;
        let mut det = RadicalNumber::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return RadicalNumber::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.recip().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let delta = &factor * &m[(c, j)];
                        m[(i, j)] -= &delta;
                    }
                }
            }
        }
        det
    }

    /// Coefficients `[c_0, ..., c_n]` of `det(λI − A) = Σ c_k λ^k` (monic),
    /// by the Faddeev-LeVerrier recursion.
    pub fn characteristic_polynomial(&self) -> Vec<RadicalNumber> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![RadicalNumber::zero(); n + 1];
        coeffs[n] = RadicalNumber::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m).expect("square");
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self.mul(&m).expect("square");
            coeffs[n - k] = am.trace().scale(&Rational::new(-1, k as i64));
        }
        coeffs
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = RadicalNumber;
    fn index(&self, (i, j): (usize, usize)) -> &RadicalNumber {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RadicalNumber {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Coordinates with respect to a fixed set of linearly independent vectors.
///
/// The reduction `P·M = R` is computed once; expressing a vector is then a
/// matrix-vector product.
#[derive(Clone, Debug)]
pub struct Span {
    basis: Matrix,
    transform: Matrix,
    rank: usize,
}

impl Span {
    /// `vectors` are the spanning vectors, all of length `dim`.
    pub fn new(vectors: &[Vec<RadicalNumber>], dim: usize) -> Result<Self> {
        let n = vectors.len();
        let mut aug = Matrix::zeros(dim, n + dim);
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: v.len(),
                    right: dim,
                });
            }
            for (i, x) in v.iter().enumerate() {
                aug[(i, j)] = x.clone();
            }
        }
        for i in 0..dim {
            aug[(i, n + i)] = RadicalNumber::one();
        }
        let (pivots, _) = aug.reduce(n);
        if pivots.len() < n {
            return Err(Error::LinearlyDependent);
        }
        let mut transform = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                transform[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(Span {
            basis: Matrix::from_columns(vectors),
            transform,
            rank: n,
        })
    }

    pub fn dim(&self) -> usize {
        self.rank
    }

    /// Coordinates of `v`, or the residual `v − M·x̂` when `v` is not in
    /// the span.
    pub fn coordinates(&self, v: &[RadicalNumber]) -> std::result::Result<Vec<RadicalNumber>, Vec<RadicalNumber>> {
        let w = self.transform.mul_vec(v);
        let x: Vec<RadicalNumber> = w[..self.rank].to_vec();
        if w[self.rank..].iter().all(RadicalNumber::is_zero) {
            return Ok(x);
        }
        let approx = self.basis.mul_vec(&x);
        Err(v.iter().zip(&approx).map(|(a, b)| a - b).collect())
    }
}
