//! Dense matrices over Q(z_N).

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::sparse::{sv_from_dense, SVec};
use super::subspace::{nullspace_rows, Subspace};
use super::CycNum;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, n: u32) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![CycNum::zero(n); rows * cols],
        }
    }

    pub fn identity(size: usize, n: u32) -> Self {
        let mut m = Self::zeros(size, size, n);
        for i in 0..size {
            m.set(i, i, CycNum::one(n));
        }
        m
    }

    pub fn scalar(size: usize, s: &CycNum) -> Self {
        let mut m = Self::zeros(size, size, s.conductor());
        for i in 0..size {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]], n: u32) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycNum::from_int(x, n)).collect())
                .collect(),
        )
        .unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycNum) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn conductor(&self) -> u32 {
        self.data.iter().map(|x| x.conductor()).max().unwrap_or(1)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let n = self.conductor().max(other.conductor());
        let mut out = Matrix::zeros(self.rows, other.cols, n);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + &(a * b);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[CycNum]) -> Result<Vec<CycNum>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero(self.conductor());
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix sum".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &CycNum) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Kronecker product, row index (i, k) -> i * other.rows + k.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let n = self.conductor().max(other.conductor());
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols, n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(&CycNum) -> CycNum) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn trace(&self) -> CycNum {
        let mut acc = CycNum::zero(self.conductor());
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self.get(i, i);
        }
        acc
    }

    pub fn sparse_rows(&self) -> Vec<SVec> {
        (0..self.rows).map(|i| sv_from_dense(self.row(i))).collect()
    }

    /// Rank by fraction-free (Bareiss) elimination over the cyclotomic integers.
    pub fn rank(&self) -> usize {
        let n = self.conductor();
        // clear denominators row by row so entries lie in Z[z]
        let mut a: Vec<Vec<CycNum>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::from(1), |acc, x| {
                    num_integer::Integer::lcm(&acc, &x.denom_lcm())
                });
                let s = BigRational::from_integer(l);
                row.iter().map(|x| x.scale(&s)).collect()
            })
            .collect();
        let (m, c) = (self.rows, self.cols);
        let mut prev = CycNum::one(n);
        let mut r = 0;
        for col in 0..c {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..m {
                for j in col + 1..c {
                    let v = &(&a[r][col] * &a[i][j]) - &(&a[i][col] * &a[r][j]);
                    a[i][j] = &v / &prev;
                }
                a[i][col] = CycNum::zero(n);
            }
            prev = a[r][col].clone();
            r += 1;
        }
        r
    }

    pub fn nullspace(&self) -> Subspace {
        nullspace_rows(&self.sparse_rows(), self.cols, self.conductor())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.cols, self.sparse_rows().iter())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.conductor();
        let size = self.rows;
        let mut a: Vec<Vec<CycNum>> = (0..size)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..size).map(|j| {
                    if i == j {
                        CycNum::one(n)
                    } else {
                        CycNum::zero(n)
                    }
                }));
                r
            })
            .collect();
        for col in 0..size {
            let p = (col..size)
                .find(|&i| !a[i][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            a.swap(col, p);
            let inv = a[col][col].inv()?;
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..size {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..2 * size {
                        if !a[col][j].is_zero() {
                            a[i][j] = &a[i][j] - &(&f * &a[col][j]);
                        }
                    }
                }
            }
        }
        Matrix::from_rows(a.into_iter().map(|r| r[size..].to_vec()).collect())
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.rows, self.conductor());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parse rows of number strings.
    pub fn parse(rows: &[Vec<String>], n: u32) -> Result<Matrix> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| CycNum::parse(s, n))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix dimensions")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank of a matrix.
pub fn mat_rank(m: &Matrix) -> usize {
    m.rank()
}

/// Canonical basis of the right kernel.
pub fn mat_nullspace(m: &Matrix) -> Subspace {
    m.nullspace()
}

/// Intersection of a non-empty list of subspaces.
pub fn subspace_meet(list: &[Subspace]) -> Result<Subspace> {
    let (first, rest) = list
        .split_first()
        .ok_or_else(|| Error::Dimension("empty meet".into()))?;
    let mut acc = first.clone();
    for s in rest {
        acc = acc.meet(s)?;
    }
    Ok(acc)
}
