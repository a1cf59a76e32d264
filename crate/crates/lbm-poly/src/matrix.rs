use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("shape mismatch")]
    Shape,
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Shape);
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Shape);
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Rows scaled to integers; returns the integer rows and per-row scale.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let l = self.row(i).iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            rows.push(
                self.row(i)
                    .iter()
                    .map(|r| r.numer() * (&l / r.denom()))
                    .collect(),
            );
            scales.push(l);
        }
        (rows, scales)
    }

    /// Exact inverse by one-step fraction-free Gauss-Jordan elimination
    /// (Bareiss) on the row-scaled integer matrix augmented with the
    /// identity. Every intermediate division is exact.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let n = self.rows;
        if n != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let (int_rows, scales) = self.integer_rows();
        let mut a: Vec<Vec<BigInt>> = int_rows
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                r
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(MatrixError::Singular)?;
            a.swap(k, p);
            let pivot_row = a[k].clone();
            let pivot = pivot_row[k].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let f = row[k].clone();
                for j in 0..2 * n {
                    let num = &pivot * &row[j] - &f * &pivot_row[j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "fraction-free step left a remainder");
                    row[j] = q;
                }
            }
            prev = pivot;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            let d = &a[i][i];
            for j in 0..n {
                inv.set(i, j, Rational::new(&a[i][n + j] * &scales[j], d.clone()));
            }
        }
        Ok(inv)
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<Rational>> = (0..m).map(|i| self.row(i).to_vec()).collect();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let pivot_row = a[r].clone();
            for row in a.iter_mut().skip(r + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] / &pivot_row[c];
                for j in c..n {
                    row[j] -= &f * &pivot_row[j];
                }
            }
            r += 1;
        }
        r
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
