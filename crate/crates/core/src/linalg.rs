//! Dense linear algebra over a [`Scalar`] field.
//!
//! Two independent determinant routes are provided: Gaussian elimination over
//! the field ([`determinant`]) and Bareiss fraction-free elimination over the
//! integers for rational matrices ([`bareiss_determinant`]).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Picks the pivot row for `col` among `from..rows`. Exact types take the
    /// first nonzero entry, floats the largest magnitude.
    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        if S::EXACT {
            (from..self.rows).find(|&r| !self.get(r, col).is_zero())
        } else {
            let best = (from..self.rows).max_by(|&a, &b| {
                self.get(a, col)
                    .abs()
                    .partial_cmp(&self.get(b, col).abs())
                    .unwrap_or(core::cmp::Ordering::Equal)
            })?;
            (!self.get(best, col).is_negligible()).then_some(best)
        }
    }

    /// Reduces in place to reduced row echelon form over the first
    /// `pivot_cols` columns and returns the pivot column of each pivot row.
    pub fn rref(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols.min(self.cols) {
            if row == self.rows {
                break;
            }
            let Some(p) = self.pivot_row(col, row) else {
                for r in row..self.rows {
                    self.set(r, col, S::zero());
                }
                continue;
            };
            self.swap_rows(row, p);
            let inv = S::one() / self.get(row, col).clone();
            for c in col..self.cols {
                let v = self.get(row, c).clone() * inv.clone();
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c).clone() - factor.clone() * self.get(row, c).clone();
                    self.set(r, c, v);
                }
                self.set(r, col, S::zero());
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref(self.cols).len()
    }
}

/// Solution set of `A y = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<S> {
    Inconsistent,
    Unique(Vec<S>),
    /// `particular + span(nullspace)`; the nullspace vectors are independent.
    Affine { particular: Vec<S>, nullspace: Vec<Vec<S>> },
}

impl<S: Scalar> LinearSolution<S> {
    pub fn is_consistent(&self) -> bool {
        !matches!(self, LinearSolution::Inconsistent)
    }
}

/// Solves `A y = b` by rank-revealing elimination.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> LinearSolution<S> {
    assert_eq!(a.rows(), b.len());
    let n = a.cols();
    let mut aug = Matrix::from_fn(a.rows(), n + 1, |r, c| {
        if c < n {
            a.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let pivots = aug.rref(n);
    for r in pivots.len()..aug.rows() {
        if !aug.get(r, n).is_negligible() {
            return LinearSolution::Inconsistent;
        }
    }
    let mut particular = vec![S::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug.get(r, n).clone();
    }
    if pivots.len() == n {
        return LinearSolution::Unique(particular);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug.get(r, f).clone();
            }
            v
        })
        .collect();
    LinearSolution::Affine { particular, nullspace }
}

/// Determinant by Gaussian elimination over the field.
pub fn determinant<S: Scalar>(m: &Matrix<S>) -> S {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = S::one();
    for col in 0..n {
        let Some(p) = a.pivot_row(col, col) else {
            return S::zero();
        };
        if p != col {
            a.swap_rows(p, col);
            det = -det;
        }
        let pivot = a.get(col, col).clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            let factor = a.get(r, col).clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = a.get(r, c).clone() - factor.clone() * a.get(col, c).clone();
                a.set(r, c, v);
            }
        }
    }
    det
}

/// Bareiss fraction-free determinant of an integer matrix.
pub fn bareiss_integer_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Exact by Sylvester's identity.
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Determinant of a rational matrix by clearing each row's denominators and
/// running Bareiss over the integers.
pub fn bareiss_determinant(m: &Matrix<Rational>) -> Rational {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let lcm = m.row(r).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &lcm;
            m.row(r).iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    Rational::new(bareiss_integer_determinant(&rows), scale)
}
