//! Quadratic forms in coordinates and the symplectic spaces they live on.

use crate::gf::{FieldDesc, FieldElem};
use crate::linalg::{dot, Matrix, Subspace, Vector};

/// `Q(x) = Σ_{i≤j} q_ij x_i x_j`, coefficients stored upper-triangular row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadForm {
    n: usize,
    field: FieldDesc,
    coeffs: Vec<FieldElem>,
}

/// Number of coefficients of a quadratic form in `n` variables.
pub fn form_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

#[inline]
fn slot(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * n - i * (i + 1) / 2 + j
}

impl QuadForm {
    pub fn zero(field: &FieldDesc, n: usize) -> Self {
        QuadForm {
            n,
            field: field.clone(),
            coeffs: vec![FieldElem::ZERO; form_dim(n)],
        }
    }

    pub fn from_coeffs(field: &FieldDesc, n: usize, coeffs: Vec<FieldElem>) -> Self {
        assert_eq!(coeffs.len(), form_dim(n), "wrong number of coefficients");
        QuadForm {
            n,
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &FieldDesc, n: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, n, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Form number `idx` in the lexicographic enumeration of coefficient
    /// vectors (first coefficient most significant).
    pub fn from_index(field: &FieldDesc, n: usize, mut idx: u64) -> Self {
        let q = field.order() as u64;
        let mut coeffs = vec![FieldElem::ZERO; form_dim(n)];
        for c in coeffs.iter_mut().rev() {
            *c = FieldElem((idx % q) as u32);
            idx /= q;
        }
        Self::from_coeffs(field, n, coeffs)
    }

    /// Inverse of [`QuadForm::from_index`].
    pub fn index(&self) -> u64 {
        let q = self.field.order() as u64;
        self.coeffs.iter().fold(0, |acc, c| acc * q + c.index() as u64)
    }

    /// The `(i,j)` coordinate form `x_i x_j` (`i ≤ j`).
    pub fn monomial(field: &FieldDesc, n: usize, i: usize, j: usize) -> Self {
        let mut f = Self::zero(field, n);
        f.coeffs[slot(n, i.min(j), i.max(j))] = FieldElem::ONE;
        f
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElem {
        self.coeffs[slot(self.n, i.min(j), i.max(j))]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, v: FieldElem) {
        let s = slot(self.n, i.min(j), i.max(j));
        self.coeffs[s] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &[FieldElem]) -> FieldElem {
        let f = &self.field;
        let mut acc = FieldElem::ZERO;
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = FieldElem::ZERO;
            for j in i..self.n {
                let c = self.coeffs[slot(self.n, i, j)];
                if !c.is_zero() {
                    row = f.add(row, f.mul(c, x[j]));
                }
            }
            acc = f.add(acc, f.mul(x[i], row));
        }
        acc
    }

    /// The matrix `U` with `Q(x) = x^T U x`, upper triangular.
    pub fn upper_matrix(&self) -> Matrix {
        let mut u = Matrix::zeros(&self.field, self.n, self.n);
        for i in 0..self.n {
            for j in i..self.n {
                u.set(i, j, self.coeff(i, j));
            }
        }
        u
    }

    /// The form `x ↦ x^T M x` for an arbitrary square `M`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let f = m.field();
        let n = m.rows();
        let mut q = Self::zero(f, n);
        for i in 0..n {
            q.set_coeff(i, i, m.get(i, i));
            for j in i + 1..n {
                q.set_coeff(i, j, f.add(m.get(i, j), m.get(j, i)));
            }
        }
        q
    }

    /// Polar matrix `P` with `Q(x+y) − Q(x) − Q(y) = x^T P y`.
    pub fn polar_matrix(&self) -> Matrix {
        let f = &self.field;
        let mut p = Matrix::zeros(f, self.n, self.n);
        for i in 0..self.n {
            let d = self.coeff(i, i);
            p.set(i, i, f.add(d, d));
            for j in i + 1..self.n {
                let c = self.coeff(i, j);
                p.set(i, j, c);
                p.set(j, i, c);
            }
        }
        p
    }

    /// `x ↦ Q(M x)` for an `n × k` matrix `M`; a form in `k` variables.
    pub fn compose(&self, m: &Matrix) -> QuadForm {
        assert_eq!(m.rows(), self.n);
        let w = m.transpose().mul(&self.upper_matrix()).mul(m);
        QuadForm::from_matrix(&w)
    }

    /// Restriction to the span of the given vectors, in their coordinates.
    pub fn restrict(&self, vectors: &[Vector]) -> QuadForm {
        if vectors.is_empty() {
            return QuadForm::zero(&self.field, 0);
        }
        self.compose(&Matrix::from_cols(&self.field, vectors))
    }

    pub fn add(&self, other: &QuadForm) -> QuadForm {
        let f = &self.field;
        QuadForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: FieldElem) -> QuadForm {
        let f = &self.field;
        QuadForm {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Keeps only the coefficients `q_ij` accepted by `keep(i, j)`.
    pub fn filter(&self, keep: impl Fn(usize, usize) -> bool) -> QuadForm {
        let mut out = Self::zero(&self.field, self.n);
        for i in 0..self.n {
            for j in i..self.n {
                if keep(i, j) {
                    out.set_coeff(i, j, self.coeff(i, j));
                }
            }
        }
        out
    }

    pub fn embed(&self, emb: &crate::gf::Embedding) -> QuadForm {
        QuadForm {
            n: self.n,
            field: emb.target.clone(),
            coeffs: self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        }
    }

    /// Every form in `n` variables, in index order.
    pub fn all(field: &FieldDesc, n: usize) -> impl Iterator<Item = QuadForm> + '_ {
        let total = (field.order() as u64).pow(form_dim(n) as u32);
        (0..total).map(move |i| QuadForm::from_index(field, n, i))
    }
}

/// `F^{2r}` with a nondegenerate alternating Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    field: FieldDesc,
    gram: Matrix,
    /// `(G^{-1})^T`, so that `A_Q = (G^{-1})^T P_Q`.
    polar_to_op: Matrix,
}

impl SymplecticSpace {
    pub fn new(gram: Matrix) -> Option<Self> {
        let field = gram.field().clone();
        let polar_to_op = gram.inverse()?.transpose();
        Some(SymplecticSpace {
            field,
            gram,
            polar_to_op,
        })
    }

    /// The split form on `F^{2r}`: `(e_i, e_{2r-1-i}) = 1` for `i < r` and
    /// `−1` for `i ≥ r`.
    pub fn standard(field: &FieldDesc, r: usize) -> Self {
        Self::new(standard_symplectic_gram(field, r)).expect("standard gram is nondegenerate")
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn rank(&self) -> usize {
        self.dim() / 2
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn pair(&self, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
        dot(&self.field, x, &self.gram.mul_vec(y))
    }

    pub fn perp(&self, u: &Subspace) -> Subspace {
        u.perp(&self.gram)
    }

    pub fn is_isotropic(&self, u: &Subspace) -> bool {
        crate::linalg::is_isotropic(u, &self.gram)
    }

    /// `A_Q` defined by `(A_Q x, y) = Q(x+y) − Q(x) − Q(y)`.
    pub fn polarize(&self, q: &QuadForm) -> Matrix {
        self.polar_to_op.mul(&q.polar_matrix())
    }

    /// Whether `g` preserves the symplectic form.
    pub fn preserves(&self, g: &Matrix) -> bool {
        g.transpose().mul(&self.gram).mul(g) == self.gram
    }

    /// Gram matrix of the given vectors.
    pub fn gram_of(&self, vectors: &[Vector]) -> Matrix {
        let k = vectors.len();
        let mut g = Matrix::zeros(&self.field, k, k);
        for j in 0..k {
            let gj = self.gram.mul_vec(&vectors[j]);
            for i in 0..k {
                g.set(i, j, dot(&self.field, &vectors[i], &gj));
            }
        }
        g
    }
}

pub fn standard_symplectic_gram(field: &FieldDesc, r: usize) -> Matrix {
    let n = 2 * r;
    let mut g = Matrix::zeros(field, n, n);
    for i in 0..n {
        let v = if i < r { field.one() } else { field.neg(field.one()) };
        g.set(i, n - 1 - i, v);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::linalg::all_vectors;

    #[test]
    fn index_round_trip() {
        let f = make_field(3, 1).unwrap();
        for i in 0..27 {
            assert_eq!(QuadForm::from_index(&f, 2, i).index(), i);
        }
    }

    #[test]
    fn polar_identity_exhaustive() {
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let f = make_field(p, k).unwrap();
            for q in QuadForm::all(&f, 2) {
                let pm = q.polar_matrix();
                for x in all_vectors(&f, 2) {
                    for y in all_vectors(&f, 2) {
                        let lhs = f.sub(f.sub(q.eval(&crate::linalg::vec_add(&f, &x, &y)), q.eval(&x)), q.eval(&y));
                        assert_eq!(lhs, dot(&f, &x, &pm.mul_vec(&y)));
                    }
                }
            }
        }
    }

    #[test]
    fn compose_matches_eval() {
        let f = make_field(3, 1).unwrap();
        let q = QuadForm::from_ints(&f, 2, &[1, 2, 1]);
        let m = Matrix::from_ints(&f, &[&[1, 1], &[0, 2]]);
        let qm = q.compose(&m);
        for x in all_vectors(&f, 2) {
            assert_eq!(qm.eval(&x), q.eval(&m.mul_vec(&x)));
        }
    }

    #[test]
    fn standard_gram_is_alternating() {
        for p in [2, 3, 5] {
            let f = make_field(p, 1).unwrap();
            let s = SymplecticSpace::standard(&f, 2);
            for x in all_vectors(&f, 4).take(200) {
                assert!(s.pair(&x, &x).is_zero());
            }
        }
    }
}
