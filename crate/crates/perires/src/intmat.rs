//! Dense integer matrices with arbitrary-precision entries.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<IntMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { rows: r, cols: c, entries })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix addition shape".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(out)
    }

    pub fn neg(&self) -> IntMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = -std::mem::take(e);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e *= c;
        }
        out
    }

    /// Exact determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = m[(k, j)].clone();
                            m[(k, j)] = m[(i, j)].clone();
                            m[(i, j)] = tmp;
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * m[(n - 1, n - 1)].clone())
    }

    /// Exact inverse of a unimodular matrix (|det| = 1), via adjugate.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let d = self.det()?;
        if !(d.clone().abs()).is_one() {
            return Err(Error::BadWitness);
        }
        let n = self.rows;
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j).det()?;
                let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                adj[(j, i)] = sign * minor;
            }
        }
        Ok(adj.scale(&d))
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows - 1, self.cols - 1);
        let mut r = 0;
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let mut c = 0;
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                m[(r, c)] = self[(i, j)].clone();
                c += 1;
            }
            r += 1;
        }
        m
    }

    pub fn pow(&self, e: u64) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("power of non-square matrix".into()));
        }
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::one());
        let inv = m.unimodular_inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn det_singular() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::zero());
        assert!(m.unimodular_inverse().is_err());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let p = m.pow(12).unwrap();
        assert_eq!(p[(0, 1)], BigInt::from(12));
    }
}
