//! Exact matrix and subspace algebra over a [`FieldDesc`].
//!
//! Matrices act on column vectors. Subspaces are stored as the rows of a
//! reduced row echelon matrix, so equal subspaces have equal representations.
//! Over `F_2` the echelon reduction runs on the bit-packed [`gf2::BitMatrix`].

pub mod gf2;
mod subspace;

use std::fmt;

use thiserror::Error;

use crate::gf::{Embedding, FieldDesc, FieldElem};

pub use subspace::{annihilator, is_isotropic, quotient_map, subspaces_of_dim, Frame, QuotientMap, Subspace};

pub type Vector = Vec<FieldElem>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a subspace of the given space")]
    NotASubspace,
    #[error("matrix is singular")]
    Singular,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
    field: FieldDesc,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &FieldDesc, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &FieldDesc, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(field: &FieldDesc, rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(field, rows, cols)
    }

    pub fn from_rows_with_cols(field: &FieldDesc, rows: &[Vector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
            field: field.clone(),
        }
    }

    /// Builds a matrix from integer entries, reducing them into the prime subfield.
    pub fn from_ints(field: &FieldDesc, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Self::from_rows(field, &rows)
    }

    pub fn from_cols(field: &FieldDesc, cols: &[Vector]) -> Self {
        let n = cols.first().map_or(0, |c| c.len());
        Self::from_rows_with_cols(field, cols, n).transpose()
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vector {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: FieldElem) -> Matrix {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn trace(&self) -> FieldElem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(FieldElem::ZERO, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    /// Image of every entry under a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Matrix {
        assert_eq!(self.field, emb.source);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| emb.apply(a)).collect(),
            field: emb.target.clone(),
        }
    }

    pub fn to_bits(&self) -> gf2::BitMatrix {
        assert!(self.field.is_gf2());
        let mut b = gf2::BitMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    b.set(i, j, true);
                }
            }
        }
        b
    }

    pub fn from_bits(field: &FieldDesc, b: &gf2::BitMatrix) -> Matrix {
        let mut m = Matrix::zeros(field, b.rows(), b.cols());
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                if b.get(i, j) {
                    m.set(i, j, FieldElem::ONE);
                }
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns; dispatches to the
    /// bit-packed path over `F_2`.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        if self.field.is_gf2() {
            let mut b = self.to_bits();
            let pivots = b.rref();
            (Matrix::from_bits(&self.field, &b), pivots)
        } else {
            self.rref_generic()
        }
    }

    /// Field-generic Gauss–Jordan elimination.
    pub fn rref_generic(&self) -> (Matrix, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right kernel `{x : M x = 0}` as a canonical subspace.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vecs: Vec<Vector> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![FieldElem::ZERO; self.cols];
                v[fc] = FieldElem::ONE;
                for (ri, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(ri, fc));
                }
                v
            })
            .collect();
        Subspace::span(f, self.cols, &vecs)
    }

    /// `(rank, kernel)` with `rank + dim kernel = cols`.
    pub fn rank_kernel(&self) -> (usize, Subspace) {
        let k = self.kernel();
        (self.cols - k.dim(), k)
    }

    /// Column space as a subspace of the target.
    pub fn image(&self) -> Subspace {
        Subspace::span(&self.field, self.rows, &self.col_vectors())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, FieldElem::ONE);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Some solution of `M x = b` (free variables set to zero), if consistent.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElem::ZERO; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(ri, self.cols);
        }
        Some(x)
    }

    /// `M^n = 0` for an `n × n` matrix.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square(), "nilpotency needs a square matrix");
        if self.field.is_gf2() {
            return self.to_bits().is_nilpotent();
        }
        self.pow(self.rows as u32).is_zero()
    }

    /// Smallest `e ≥ 1` with `M^e = 0`, if `M` is nilpotent.
    pub fn nilpotency_index(&self) -> Option<u32> {
        let mut power = self.clone();
        for e in 1..=self.rows.max(1) as u32 {
            if power.is_zero() {
                return Some(e);
            }
            power = power.mul(self);
        }
        None
    }
}

/// Standard rank/kernel entry point.
pub fn rank_kernel(m: &Matrix) -> (usize, Subspace) {
    m.rank_kernel()
}

pub fn is_nilpotent(m: &Matrix) -> bool {
    m.is_nilpotent()
}

// --- vector helpers ---

pub fn zero_vector(n: usize) -> Vector {
    vec![FieldElem::ZERO; n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = FieldElem::ONE;
    v
}

pub fn vec_add(f: &FieldDesc, a: &[FieldElem], b: &[FieldElem]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: &FieldDesc, a: &[FieldElem], b: &[FieldElem]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: &FieldDesc, c: FieldElem, a: &[FieldElem]) -> Vector {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// `a + c b`
pub fn vec_axpy(f: &FieldDesc, a: &[FieldElem], c: FieldElem, b: &[FieldElem]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect()
}

pub fn dot(f: &FieldDesc, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    a.iter()
        .zip(b)
        .fold(FieldElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Bilinear pairing `x^T G y`.
pub fn pair(g: &Matrix, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
    dot(g.field(), x, &g.mul_vec(y))
}

pub fn is_zero_vector(v: &[FieldElem]) -> bool {
    v.iter().all(|e| e.is_zero())
}

/// Every vector of `F^n` in lexicographic order of its coordinates
/// (first coordinate most significant).
pub fn all_vectors(f: &FieldDesc, n: usize) -> impl Iterator<Item = Vector> + '_ {
    let q = f.order() as u64;
    let total = q.pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![FieldElem::ZERO; n];
        for slot in v.iter_mut().rev() {
            *slot = FieldElem((idx % q) as u32);
            idx /= q;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn identity_rank_kernel() {
        let f = make_field(2, 1).unwrap();
        let (rank, ker) = Matrix::identity(&f, 3).rank_kernel();
        assert_eq!(rank, 3);
        assert_eq!(ker.dim(), 0);
    }

    #[test]
    fn zero_rank_kernel() {
        let f = make_field(2, 1).unwrap();
        let (rank, ker) = Matrix::zeros(&f, 2, 2).rank_kernel();
        assert_eq!(rank, 0);
        assert_eq!(ker, Subspace::full(&f, 2));
    }

    #[test]
    fn shift_rank_kernel() {
        let f = make_field(2, 1).unwrap();
        let m = Matrix::from_ints(&f, &[&[0, 1], &[0, 0]]);
        let (rank, ker) = m.rank_kernel();
        assert_eq!(rank, 1);
        assert_eq!(ker, Subspace::span(&f, 2, &[vec![FieldElem::ONE, FieldElem::ZERO]]));
        assert!(m.is_nilpotent());
    }

    #[test]
    fn nilpotency_examples() {
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let f = make_field(p, k).unwrap();
            let m = Matrix::from_ints(&f, &[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
            assert!(m.is_nilpotent());
            assert_eq!(m.nilpotency_index(), Some(3));
            assert!(!Matrix::identity(&f, 3).is_nilpotent());
            assert_eq!(Matrix::identity(&f, 3).nilpotency_index(), None);
        }
    }

    #[test]
    fn inverse_and_solve() {
        let f = make_field(3, 1).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 2], &[0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&f, 2));
        let b = vec![f.from_int(1), f.from_int(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let singular = Matrix::from_ints(&f, &[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[f.from_int(0), f.from_int(1)]).is_none());
    }

    #[test]
    fn all_vectors_order() {
        let f = make_field(2, 1).unwrap();
        let v: Vec<Vector> = all_vectors(&f, 2).collect();
        assert_eq!(v.len(), 4);
        assert_eq!(v[1], vec![FieldElem::ZERO, FieldElem::ONE]);
    }
}
