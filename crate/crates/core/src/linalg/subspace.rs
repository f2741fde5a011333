use crate::gf::{FieldDesc, FieldElem};

use super::{dot, is_zero_vector, vec_axpy, LinalgError, Matrix, Vector};

/// A subspace of `F^n`, stored as a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &FieldDesc, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FieldDesc, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &FieldDesc, ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        Self::from_matrix_rows(&Matrix::from_rows_with_cols(field, vectors, ambient))
    }

    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let all_cols: Vec<usize> = (0..m.cols()).collect();
        Subspace {
            ambient: m.cols(),
            basis: r.select(&keep, &all_cols),
            pivots,
        }
    }

    pub fn field(&self) -> &FieldDesc {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Echelon basis rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis; `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[FieldElem]) -> Option<Vector> {
        let f = self.field();
        let coords: Vector = self.pivots.iter().map(|&p| v[p]).collect();
        let mut rest = v.to_vec();
        for (i, &c) in coords.iter().enumerate() {
            if !c.is_zero() {
                rest = vec_axpy(f, &rest, f.neg(c), self.basis.row(i));
            }
        }
        is_zero_vector(&rest).then_some(coords)
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vecs = self.basis_vectors();
        vecs.extend(other.basis_vectors());
        Subspace::span(self.field(), self.ambient, &vecs)
    }

    /// Linear equations cutting out the subspace: rows `N` with `N v = 0 ⇔ v ∈ U`.
    pub fn equations(&self) -> Matrix {
        annihilator(self).basis.clone()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut eqs = self.equations().row_vectors();
        eqs.extend(other.equations().row_vectors());
        if eqs.is_empty() {
            return Subspace::full(self.field(), self.ambient);
        }
        Matrix::from_rows_with_cols(self.field(), &eqs, self.ambient).kernel()
    }

    /// `{x : x^T G u = 0 for all u ∈ U}`.
    pub fn perp(&self, gram: &Matrix) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient);
        }
        // rows (G u)^T
        let rows: Vec<Vector> = self.basis_vectors().iter().map(|u| gram.mul_vec(u)).collect();
        Matrix::from_rows_with_cols(self.field(), &rows, self.ambient).kernel()
    }

    /// `M(U)` for a linear map `M`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        let vecs: Vec<Vector> = self.basis_vectors().iter().map(|u| m.mul_vec(u)).collect();
        Subspace::span(self.field(), m.rows(), &vecs)
    }

    /// `{x : M x ∈ U}`.
    pub fn preimage_under(&self, m: &Matrix) -> Subspace {
        let eqs = self.equations();
        if eqs.rows() == 0 {
            return Subspace::full(self.field(), m.cols());
        }
        eqs.mul(m).kernel()
    }

    /// Vectors extending this subspace's basis to a basis of `larger`, chosen
    /// greedily from `larger`'s echelon basis.
    pub fn complement_in(&self, larger: &Subspace) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in larger.basis_vectors() {
            if !acc.contains(&v) {
                acc = acc.sum(&Subspace::span(self.field(), self.ambient, std::slice::from_ref(&v)));
                out.push(v);
            }
        }
        out
    }

    /// Every element, for small subspaces (lexicographic in the echelon coordinates).
    pub fn elements(&self) -> Vec<Vector> {
        let f = self.field();
        let coords: Vec<Vector> = super::all_vectors(f, self.dim()).collect();
        coords
            .iter()
            .map(|c| {
                let mut v = vec![FieldElem::ZERO; self.ambient];
                for (i, &ci) in c.iter().enumerate() {
                    if !ci.is_zero() {
                        v = vec_axpy(f, &v, ci, self.basis.row(i));
                    }
                }
                v
            })
            .collect()
    }
}

/// `Ann(U)` under the coordinate pairing of `F^n` with itself.
pub fn annihilator(u: &Subspace) -> Subspace {
    if u.dim() == 0 {
        return Subspace::full(u.field(), u.ambient);
    }
    u.basis.kernel()
}

/// Coordinates with respect to an arbitrary list of independent vectors.
#[derive(Clone, Debug)]
pub struct Frame {
    vectors: Vec<Vector>,
    pivot_cols: Vec<usize>,
    /// Inverse of the vectors restricted to `pivot_cols`.
    inverse: Matrix,
    field: FieldDesc,
}

impl Frame {
    pub fn new(field: &FieldDesc, ambient: usize, vectors: Vec<Vector>) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows_with_cols(field, &vectors, ambient);
        let (_, pivots) = m.rref();
        if pivots.len() != vectors.len() {
            return Err(LinalgError::DimensionMismatch(
                "frame vectors are dependent".into(),
            ));
        }
        let rows: Vec<usize> = (0..vectors.len()).collect();
        let inverse = m.select(&rows, &pivots).inverse().ok_or(LinalgError::Singular)?;
        Ok(Frame {
            vectors,
            pivot_cols: pivots,
            inverse,
            field: field.clone(),
        })
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coefficients `c` with `Σ c_i v_i = x`, assuming `x` lies in the span.
    pub fn coords_unchecked(&self, x: &[FieldElem]) -> Vector {
        let f = &self.field;
        let k = self.vectors.len();
        (0..k)
            .map(|j| {
                self.pivot_cols
                    .iter()
                    .enumerate()
                    .fold(FieldElem::ZERO, |acc, (i, &pc)| {
                        f.add(acc, f.mul(x[pc], self.inverse.get(i, j)))
                    })
            })
            .collect()
    }

    pub fn coords(&self, x: &[FieldElem]) -> Option<Vector> {
        let c = self.coords_unchecked(x);
        (self.combine(&c) == x).then_some(c)
    }

    pub fn combine(&self, c: &[FieldElem]) -> Vector {
        let f = &self.field;
        let n = self.vectors.first().map_or(0, |v| v.len());
        let mut out = vec![FieldElem::ZERO; n];
        for (ci, v) in c.iter().zip(&self.vectors) {
            if !ci.is_zero() {
                out = vec_axpy(f, &out, *ci, v);
            }
        }
        out
    }
}

/// The quotient `W / W'` with a fixed section.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub sub: Subspace,
    /// Coset representatives of a basis of the quotient.
    pub section: Vec<Vector>,
    frame: Frame,
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.section.len()
    }

    /// Quotient coordinates of `x ∈ W`; `None` if `x ∉ W`.
    pub fn project(&self, x: &[FieldElem]) -> Option<Vector> {
        let c = self.frame.coords(x)?;
        Some(c[self.sub.dim()..].to_vec())
    }

    /// The representative `Σ y_i s_i` of the class with coordinates `y`.
    pub fn lift(&self, y: &[FieldElem]) -> Vector {
        let f = self.sub.field();
        let mut out = vec![FieldElem::ZERO; self.sub.ambient()];
        for (c, s) in y.iter().zip(&self.section) {
            out = vec_axpy(f, &out, *c, s);
        }
        out
    }
}

pub fn quotient_map(w: &Subspace, w_sub: &Subspace) -> Result<QuotientMap, LinalgError> {
    if !w.contains_subspace(w_sub) {
        return Err(LinalgError::NotASubspace);
    }
    let section = w_sub.complement_in(w);
    let mut vecs = w_sub.basis_vectors();
    vecs.extend(section.iter().cloned());
    let frame = Frame::new(w.field(), w.ambient(), vecs)?;
    Ok(QuotientMap {
        sub: w_sub.clone(),
        section,
        frame,
    })
}

/// Every `k`-dimensional subspace of `F^n`, by enumerating echelon forms.
pub fn subspaces_of_dim(field: &FieldDesc, n: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(field, n, k, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots(
    field: &FieldDesc,
    n: usize,
    k: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Subspace>,
) {
    if pivots.len() == k {
        // Free slots: in row i, columns after pivots[i] that are not pivots.
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let p = pivots[i];
                let pv = pivots.clone();
                ((p + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        for fill in super::all_vectors(field, slots.len()) {
            let mut m = Matrix::zeros(field, k, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, FieldElem::ONE);
            }
            for (&(i, c), &v) in slots.iter().zip(&fill) {
                m.set(i, c, v);
            }
            out.push(Subspace {
                ambient: n,
                basis: m,
                pivots: pivots.clone(),
            });
        }
        return;
    }
    for p in start..n {
        if n - p < k - pivots.len() {
            break;
        }
        pivots.push(p);
        choose_pivots(field, n, k, p + 1, pivots, out);
        pivots.pop();
    }
}

/// Whether every pair of vectors in `U` pairs to zero under `gram`.
pub fn is_isotropic(u: &Subspace, gram: &Matrix) -> bool {
    let f = u.field();
    let b = u.basis_vectors();
    b.iter()
        .all(|x| b.iter().all(|y| dot(f, x, &gram.mul_vec(y)).is_zero()))
}
