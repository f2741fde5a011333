//! Gradings `V = ⊕ V_i` and the induced gradings of `g` and `g*`.

use std::collections::BTreeMap;

use crate::gf::FieldDesc;
use crate::linalg::{annihilator, Matrix, Subspace, Vector};
use crate::quadform::QuadForm;

use super::{ClassicalError, Kind, LieAlgebra};

/// A grading of `F^n` given by a basis (the columns of `basis`) and a degree
/// for each basis vector.
#[derive(Clone, Debug)]
pub struct Grading {
    field: FieldDesc,
    basis: Matrix,
    inverse: Matrix,
    degrees: Vec<i32>,
}

impl Grading {
    pub fn new(basis: Matrix, degrees: Vec<i32>) -> Option<Self> {
        assert_eq!(basis.cols(), degrees.len());
        let inverse = basis.inverse()?;
        Some(Grading {
            field: basis.field().clone(),
            basis,
            inverse,
            degrees,
        })
    }

    /// The grading in which standard basis vector `i` has degree `degrees[i]`.
    pub fn coordinate(field: &FieldDesc, degrees: Vec<i32>) -> Self {
        let n = degrees.len();
        Self::new(Matrix::identity(field, n), degrees).expect("identity is invertible")
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// `i ↦ dim V_i`, nonzero entries only.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }

    pub fn dim_of(&self, i: i32) -> usize {
        self.degrees.iter().filter(|&&d| d == i).count()
    }

    /// Largest `m ≥ 0` with `V_m ≠ 0` (0 for the zero space).
    pub fn top(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0).max(0)
    }

    fn vectors_where(&self, pred: impl Fn(i32) -> bool) -> Vec<Vector> {
        (0..self.dim())
            .filter(|&k| pred(self.degrees[k]))
            .map(|k| self.basis.col(k))
            .collect()
    }

    pub fn component(&self, i: i32) -> Subspace {
        Subspace::span(&self.field, self.dim(), &self.vectors_where(|d| d == i))
    }

    /// `V_{≥i}`
    pub fn ge(&self, i: i32) -> Subspace {
        Subspace::span(&self.field, self.dim(), &self.vectors_where(|d| d >= i))
    }

    /// Canonical description (degree, component) used for deduplication.
    pub fn key(&self) -> Vec<(i32, Subspace)> {
        self.dims().keys().map(|&i| (i, self.component(i))).collect()
    }

    /// The grading `g(V_i)`.
    pub fn act(&self, g: &Matrix) -> Grading {
        Grading::new(g.mul(&self.basis), self.degrees.clone()).expect("g is invertible")
    }

    /// `P^{-1} M P`: an endomorphism in graded coordinates.
    pub fn to_graded(&self, m: &Matrix) -> Matrix {
        self.inverse.mul(m).mul(&self.basis)
    }

    pub fn from_graded(&self, m: &Matrix) -> Matrix {
        self.basis.mul(m).mul(&self.inverse)
    }

    /// `Q ∘ P`: a quadratic form in graded coordinates.
    pub fn form_to_graded(&self, q: &QuadForm) -> QuadForm {
        q.compose(&self.basis)
    }

    /// Gram matrix in graded coordinates.
    pub fn gram_to_graded(&self, gram: &Matrix) -> Matrix {
        self.basis.transpose().mul(gram).mul(&self.basis)
    }

    /// Whether `g(V_{≥i}) = V_{≥i}` for every `i`, i.e. `g ∈ G_{≥0}`.
    pub fn preserves_filtration(&self, g: &Matrix) -> bool {
        let h = self.to_graded(g);
        (0..self.dim()).all(|r| {
            (0..self.dim()).all(|c| h.get(r, c).is_zero() || self.degrees[r] >= self.degrees[c])
        })
    }

    /// Dimension conditions: `f_i = f_{−i} ≥ f_{−i−2}` for `i ≥ 0`, plus
    /// `f_i` even for even `i` (`Some(true)`) or for odd `i` (`Some(false)`).
    pub fn dims_ok(&self, parity: Option<bool>) -> bool {
        dims_ok(&self.dims(), parity)
    }

    /// The s-good conditions for the given algebra's kind.
    ///
    /// Kind C: the symplectic conditions (even `i` ⇒ `f_i` even, `(V_i, V_j) = 0`
    /// unless `i + j = 0`). Kind D: odd `i` ⇒ `f_i` even, the same pairing
    /// condition, and `Q|_{V_i} = 0` for `i ≠ 0`. Kind A: the dimension
    /// symmetry and monotonicity only.
    pub fn is_s_good(&self, alg: &LieAlgebra) -> bool {
        if self.dim() != alg.vdim() || self.field != *alg.field() {
            return false;
        }
        match alg.kind() {
            Kind::A => self.dims_ok(None),
            Kind::C => self.dims_ok(Some(true)) && self.pairing_ok(alg.gram().unwrap()),
            Kind::D => {
                self.dims_ok(Some(false))
                    && self.pairing_ok(alg.gram().unwrap())
                    && self.isotropy_ok(alg.ambient_form().unwrap())
            }
        }
    }

    /// `(V_i, V_j) = 0` whenever `i + j ≠ 0`.
    pub fn pairing_ok(&self, gram: &Matrix) -> bool {
        let g = self.gram_to_graded(gram);
        (0..self.dim()).all(|r| {
            (0..self.dim()).all(|c| g.get(r, c).is_zero() || self.degrees[r] + self.degrees[c] == 0)
        })
    }

    fn isotropy_ok(&self, q: &QuadForm) -> bool {
        let qg = self.form_to_graded(q);
        (0..self.dim()).all(|k| self.degrees[k] == 0 || qg.coeff(k, k).is_zero())
    }
}

pub(crate) fn dims_ok(dims: &BTreeMap<i32, usize>, parity: Option<bool>) -> bool {
    let f = |i: i32| dims.get(&i).copied().unwrap_or(0);
    let top = dims.keys().map(|k| k.abs()).max().unwrap_or(0);
    for i in 0..=top {
        if f(i) != f(-i) {
            return false;
        }
        if f(-i) < f(-i - 2) {
            return false;
        }
        if let Some(even_in_even) = parity {
            let constrained = (i % 2 == 0) == even_in_even;
            if constrained && f(i) % 2 == 1 {
                return false;
            }
        }
    }
    true
}

/// The decompositions `g = ⊕ g_i` and `g* = ⊕ g*_j`, in coordinates of the
/// basis of `g` and its dual basis.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub pieces: BTreeMap<i32, Subspace>,
    pub dual_pieces: BTreeMap<i32, Subspace>,
}

impl GradedAlgebra {
    pub fn piece(&self, i: i32) -> Option<&Subspace> {
        self.pieces.get(&i)
    }

    pub fn dual_piece(&self, j: i32) -> Option<&Subspace> {
        self.dual_pieces.get(&j)
    }

    pub fn piece_dim(&self, i: i32) -> usize {
        self.pieces.get(&i).map_or(0, |s| s.dim())
    }
}

/// `g_i = {T ∈ g : T V_j ⊆ V_{i+j}}` and `g*_j = Ann(⊕_{i ≠ −j} g_i)`.
pub fn grade_algebra(alg: &LieAlgebra, grading: &Grading) -> Result<GradedAlgebra, ClassicalError> {
    if !grading.is_s_good(alg) {
        return Err(ClassicalError::NotSGood);
    }
    let f = alg.field();
    let n = alg.vdim();
    let deg = grading.degrees();
    let mut spans: BTreeMap<i32, Vec<Vector>> = BTreeMap::new();
    for t in alg.basis() {
        let h = grading.to_graded(t);
        let mut parts: BTreeMap<i32, Matrix> = BTreeMap::new();
        for r in 0..n {
            for c in 0..n {
                let v = h.get(r, c);
                if !v.is_zero() {
                    parts
                        .entry(deg[r] - deg[c])
                        .or_insert_with(|| Matrix::zeros(f, n, n))
                        .set(r, c, v);
                }
            }
        }
        for (i, part) in parts {
            let back = grading.from_graded(&part);
            let coords = alg
                .coordinates(&back)
                .ok_or(ClassicalError::NotSGood)?;
            spans.entry(i).or_default().push(coords);
        }
    }
    let dim = alg.dim();
    let pieces: BTreeMap<i32, Subspace> = spans
        .into_iter()
        .map(|(i, v)| (i, Subspace::span(f, dim, &v)))
        .filter(|(_, s)| !s.is_zero())
        .collect();
    let total: usize = pieces.values().map(|s| s.dim()).sum();
    if total != dim {
        return Err(ClassicalError::NotSGood);
    }
    let mut dual_pieces = BTreeMap::new();
    for &i in pieces.keys() {
        let j = -i;
        let others: Vec<Vector> = pieces
            .iter()
            .filter(|(&k, _)| k != i)
            .flat_map(|(_, s)| s.basis_vectors())
            .collect();
        dual_pieces.insert(j, annihilator(&Subspace::span(f, dim, &others)));
    }
    Ok(GradedAlgebra {
        pieces,
        dual_pieces,
    })
}
