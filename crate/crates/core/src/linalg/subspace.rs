use std::sync::Arc;

use super::matrix::{Matrix, Vector};
use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, CyclotomicField};

/// Reduce `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for k in c..ncols {
                if rows[r][k].is_zero() {
                    continue;
                }
                let t = &rows[r][k] * &f;
                rows[i][k] = &rows[i][k] - &t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A linear subspace of Q(zeta_L)^d with a canonical reduced echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    field: Arc<CyclotomicField>,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(field: &Arc<CyclotomicField>, ambient: usize) -> Self {
        Subspace {
            ambient,
            field: field.clone(),
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Arc<CyclotomicField>, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(field, ambient, i)).collect();
        Subspace {
            ambient,
            field: field.clone(),
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &Arc<CyclotomicField>, ambient: usize, vectors: &[Vector]) -> Self {
        let mut rows: Vec<Vector> = vectors.to_vec();
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector length mismatch");
        }
        let pivots = rref(&mut rows);
        Subspace {
            ambient,
            field: field.clone(),
            basis: rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Basis as the rows of a matrix.
    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(&self.field, 0, self.ambient);
        }
        Matrix::from_rows(&self.field, self.basis.clone()).expect("uniform rows")
    }

    /// v minus its projection along the pivots; zero iff v lies in the subspace.
    pub fn residue(&self, v: &[Cyclotomic]) -> Vector {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(y * &f);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Cyclotomic]) -> bool {
        self.residue(v).iter().all(Cyclotomic::is_zero)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords(&self, v: &[Cyclotomic]) -> Result<Vector> {
        if !self.contains(v) {
            return Err(Error::Dimension("vector is not in the subspace".into()));
        }
        Ok(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates.
    pub fn from_coords(&self, c: &[Cyclotomic]) -> Vector {
        let mut v = vec![Cyclotomic::zero(&self.field); self.ambient];
        for (b, x) in self.basis.iter().zip(c) {
            if x.is_zero() {
                continue;
            }
            for (y, bb) in v.iter_mut().zip(b) {
                if !bb.is_zero() {
                    *y = &*y + &(bb * x);
                }
            }
        }
        v
    }

    /// Add a vector, keeping the basis reduced. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Cyclotomic]) -> bool {
        let mut r = self.residue(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for b in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let f = b[p].clone();
            for (x, y) in b.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = &*x - &(y * &f);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut out = self.clone();
        for v in &other.basis {
            out.insert(v);
        }
        Ok(out)
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient dimensions {} and {} differ",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Rows spanning the annihilator: w lies in the subspace iff C w = 0.
    pub fn constraints(&self) -> Matrix {
        let k = kernel(&self.basis_matrix_or_empty());
        if k.basis.is_empty() {
            return Matrix::zeros(&self.field, 0, self.ambient);
        }
        Matrix::from_rows(&self.field, k.basis).expect("uniform rows")
    }

    fn basis_matrix_or_empty(&self) -> Matrix {
        self.basis_matrix()
    }

    /// The standard basis vectors at non-pivot positions; they span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| self.pivots.binary_search(i).is_err())
            .collect()
    }
}

pub fn unit(field: &Arc<CyclotomicField>, n: usize, i: usize) -> Vector {
    let mut v = vec![Cyclotomic::zero(field); n];
    v[i] = Cyclotomic::one(field);
    v
}

/// The null space {v : Mv = 0}.
pub fn kernel(m: &Matrix) -> Subspace {
    let field = m.field().clone();
    let n = m.cols();
    let mut rows = m.to_rows();
    let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows) };
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| pivots.binary_search(c).is_err()) {
        let mut v = vec![Cyclotomic::zero(&field); n];
        v[free] = Cyclotomic::one(&field);
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    Subspace::span(&field, n, &basis)
}

/// The column space of M.
pub fn image(m: &Matrix) -> Subspace {
    let t = m.transpose();
    Subspace::span(m.field(), m.rows(), &t.to_rows())
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Subspace::zero(&a.field, a.ambient));
    }
    // {x in a : x satisfies b's constraints}
    let c = b.constraints();
    if c.rows() == 0 {
        return Ok(a.clone());
    }
    let ba = a.basis_matrix().transpose();
    let k = kernel(&(&c * &ba));
    let vecs: Vec<Vector> = k.basis.iter().map(|co| a.from_coords(co)).collect();
    Ok(Subspace::span(&a.field, a.ambient, &vecs))
}

/// {v : op v in s}.
pub fn preimage(op: &Matrix, s: &Subspace) -> Result<Subspace> {
    if op.rows() != s.ambient {
        return Err(Error::Dimension("preimage target mismatch".into()));
    }
    let c = s.constraints();
    if c.rows() == 0 {
        return Ok(Subspace::full(&s.field, op.cols()));
    }
    Ok(kernel(&(&c * op)))
}

/// The image of a subspace under op.
pub fn map_subspace(op: &Matrix, s: &Subspace) -> Subspace {
    let vecs: Vec<Vector> = s.basis.iter().map(|v| op.apply(v)).collect();
    Subspace::span(&s.field, op.rows(), &vecs)
}

/// Matrix of op on an op-invariant subspace, in the echelon coordinates.
pub fn restrict(op: &Matrix, s: &Subspace) -> Result<Matrix> {
    let cols: Vec<Vector> = s
        .basis
        .iter()
        .map(|b| s.coords(&op.apply(b)))
        .collect::<Result<_>>()
        .map_err(|_| Error::Dimension("subspace is not invariant".into()))?;
    Ok(Matrix::from_cols(&s.field, s.dim(), &cols))
}

/// Matrix of op on the span of an explicit linearly independent basis, in that basis.
pub fn restrict_to_basis(op: &Matrix, basis: &[Vector]) -> Result<Matrix> {
    let field = op.field().clone();
    let s = Subspace::span(&field, op.cols(), basis);
    if s.dim() != basis.len() {
        return Err(Error::Dimension("basis vectors are linearly dependent".into()));
    }
    let c = Matrix::from_cols(&field, s.dim(), &basis.iter().map(|b| s.coords(b)).collect::<Result<Vec<_>>>()?);
    let ci = c.inverse().expect("change of basis is invertible");
    Ok(&(&ci * &restrict(op, &s)?) * &c)
}

/// Matrix of op on the quotient ambient / s, in the basis of non-pivot unit vectors.
pub fn quotient_op(op: &Matrix, s: &Subspace) -> Matrix {
    let idx = s.complement_indices();
    let cols: Vec<Vector> = idx
        .iter()
        .map(|&j| {
            let r = s.residue(&op.col(j));
            idx.iter().map(|&i| r[i].clone()).collect()
        })
        .collect();
    Matrix::from_cols(&s.field, idx.len(), &cols)
}

/// Smallest subspace containing `seeds` and stable under every op.
pub fn spin(ops: &[Matrix], seeds: &[Vector], ambient: usize, field: &Arc<CyclotomicField>) -> Subspace {
    let mut s = Subspace::zero(field, ambient);
    let mut queue: Vec<Vector> = Vec::new();
    for v in seeds {
        if s.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if s.is_full() {
            break;
        }
        for op in ops {
            let w = op.apply(&v);
            if s.insert(&w) {
                queue.push(w);
            }
        }
    }
    s
}

/// The largest subspace of k stable under every op, by a decreasing fixpoint.
pub fn largest_invariant_subspace(ops: &[Matrix], k: &Subspace) -> Result<Subspace> {
    let mut cur = k.clone();
    loop {
        if cur.is_zero() {
            return Ok(cur);
        }
        let mut next = cur.clone();
        for op in ops {
            next = intersect(&next, &preimage(op, &cur)?)?;
        }
        if next.dim() == cur.dim() {
            return Ok(cur);
        }
        cur = next;
    }
}
