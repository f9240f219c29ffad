use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, CyclotomicField, Rational};

pub type Vector = Vec<Cyclotomic>;

/// Dense matrix over Q(zeta_L), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Arc<CyclotomicField>,
    data: Vec<Cyclotomic>,
}

impl Matrix {
    pub fn zeros(field: &Arc<CyclotomicField>, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field: field.clone(),
            data: vec![Cyclotomic::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CyclotomicField>, n: usize) -> Self {
        Self::scalar(field, n, &Cyclotomic::one(field))
    }

    pub fn scalar(field: &Arc<CyclotomicField>, n: usize, c: &Cyclotomic) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diag(field: &Arc<CyclotomicField>, entries: &[Cyclotomic]) -> Self {
        let mut m = Self::zeros(field, entries.len(), entries.len());
        for (i, c) in entries.iter().enumerate() {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(field: &Arc<CyclotomicField>, rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            field: field.clone(),
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from small integers; handy in tests.
    pub fn from_i64(field: &Arc<CyclotomicField>, rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| Cyclotomic::from_int(field, x)).collect())
            .collect();
        Self::from_rows(field, v).expect("rectangular input")
    }

    /// Columns given as vectors.
    pub fn from_cols(field: &Arc<CyclotomicField>, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// The same matrix over Q(zeta_L') for a multiple L' of L.
    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Result<Self> {
        let mut m = Self::zeros(target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].embed(target)?;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data: self.data.iter().map(|x| x.scale(r)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &out.data[i * other.cols + j];
                    out.data[i * other.cols + j] = cur + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Cyclotomic::zero(&self.field);
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// AB - BA.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn sub_scalar(&self, c: &Cyclotomic) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = &m[(i, i)] - c;
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Kronecker product, index (i, k) -> i * other.rows + k.
    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(&self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// Inverse by Gauss-Jordan, None if singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(&self.field, n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].inv().expect("nonzero pivot");
            for x in a[c].iter_mut() {
                *x = &*x * &piv;
            }
            for x in inv[c].iter_mut() {
                *x = &*x * &piv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &a[c][k] * &f;
                    a[r][k] = &a[r][k] - &t;
                    let t = &inv[c][k] * &f;
                    inv[r][k] = &inv[r][k] - &t;
                }
            }
        }
        Some(Self::from_rows(&self.field, inv).expect("square"))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        super::rref(&mut rows).len()
    }

    pub fn det(&self) -> Cyclotomic {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Cyclotomic::one(&self.field);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Cyclotomic::zero(&self.field);
            };
            if p != c {
                a.swap(c, p);
                det = -det;
            }
            det = &det * &a[c][c];
            let piv = a[c][c].inv().expect("nonzero pivot");
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &piv;
                for k in c..n {
                    let t = &a[c][k] * &f;
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
        det
    }

    /// Rows and columns restricted to the given index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Entries as literal strings, row by row.
    pub fn to_literals(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over L={}]", self.rows, self.cols, self.field.order())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f = CyclotomicField::new(1);
        let a = Matrix::from_i64(&f, &[&[2, 1], &[7, 4]]);
        assert!(a.det().is_one());
        let ai = a.inverse().unwrap();
        assert!((&a * &ai).is_identity());
        let s = Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert!(s.det().is_zero());
    }

    #[test]
    fn kron_shape() {
        let f = CyclotomicField::new(1);
        let a = Matrix::from_i64(&f, &[&[0, 1], &[1, 0]]);
        let i = Matrix::identity(&f, 3);
        let k = a.kron(&i);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert!(k[(0, 3)].is_one() && k[(3, 0)].is_one());
    }
}
