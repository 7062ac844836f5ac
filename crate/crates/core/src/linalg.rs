//! Exact integer matrices and small rational solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.entries[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let cur = out.get(i, j);
                    let v = a.checked_mul(b).and_then(|p| p.checked_add(cur)).ok_or(Error::Overflow)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let mut a = to_rational(&self.to_rows());
        let n = self.rows;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= a[c][c].clone();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let sub = &f * &a[c][k];
                    a[r][k] -= sub;
                }
            }
        }
        det
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| {
        x.checked_mul(y).and_then(|p| p.checked_add(acc)).ok_or(Error::Overflow)
    })
}

pub fn add(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter().zip(b).map(|(&x, &y)| x.checked_add(y).ok_or(Error::Overflow)).collect()
}

pub fn scale(a: &[i64], k: i64) -> Result<Vec<i64>> {
    a.iter().map(|&x| x.checked_mul(k).ok_or(Error::Overflow)).collect()
}

pub fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn to_rational(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect()
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Solves the square system `a x = b` over the rationals. Returns `None` when singular.
pub fn solve(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m = to_rational(a);
    for (row, &bi) in m.iter_mut().zip(b) {
        assert_eq!(row.len(), n);
        row.push(rat(bi));
    }
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let inv = m[c][c].recip();
        for k in c..=n {
            m[c][k] *= &inv;
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..=n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of an integer matrix that is unimodular. Errors otherwise.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let rows = m.to_rows();
    let mut out = IntMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let x = solve(&rows, &e).ok_or(Error::DegenerateBasis)?;
        for (i, q) in x.iter().enumerate() {
            out.set(i, j, rational_to_i64(q).ok_or(Error::NonIntegral)?);
        }
    }
    Ok(out)
}

pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Clears denominators and divides by the content, keeping the sign direction.
pub fn rational_to_primitive(v: &[BigRational]) -> Result<Vec<i64>> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g.abs() };
    ints.iter().map(|x| (x / &g).to_i64().ok_or(Error::Overflow)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        let b = a.mul(&a).unwrap();
        assert_eq!(b.to_rows(), vec![vec![1, 4], vec![0, 1]]);
        assert_eq!(a.transpose().to_rows(), vec![vec![1, 0], vec![2, 1]]);
        assert_eq!(a.determinant(), rat(1));
    }

    #[test]
    fn overflow_is_reported() {
        let a = IntMatrix::from_rows(&[vec![i64::MAX, 1], vec![0, 1]]);
        assert_eq!(a.mul(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])), Err(Error::Overflow));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let b = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(unimodular_inverse(&b), Err(Error::NonIntegral));
    }

    #[test]
    fn primitive_parts() {
        assert_eq!(primitive(&[2, 4, -6]), vec![1, 2, -3]);
        assert_eq!(primitive(&[0, 0]), vec![0, 0]);
        let q = vec![BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into())];
        assert_eq!(rational_to_primitive(&q).unwrap(), vec![2, 3]);
    }
}
