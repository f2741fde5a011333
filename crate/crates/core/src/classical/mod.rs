//! Concrete models of `gl(V)`, `sp(V)` and `so(V)` over a finite field,
//! their duals, the `G`-equivariant isomorphisms `g ≅ g*` for types A and D,
//! rational group points and Borel subalgebras.

mod family;
mod grading;
mod transport;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldDesc, FieldElem};
use crate::linalg::{dot, Matrix, Subspace, Vector};
use crate::quadform::{standard_symplectic_gram, QuadForm};

pub use family::{family, family_for, registered_families, ClassicalFamily, MAX_GROUP_ORDER};
pub(crate) use grading::dims_ok;
pub use grading::{grade_algebra, GradedAlgebra, Grading};
pub use transport::{transport_iso, transport_matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("kind {0} needs an even-dimensional space, got {1}")]
    OddDimension(Kind, usize),
    #[error("operation not defined for kind {0}")]
    WrongKind(Kind),
    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    SizeLimitExceeded { order: u128, limit: u128 },
    #[error("grading is not s-good")]
    NotSGood,
    #[error("matrix is not in the Lie algebra")]
    NotInAlgebra,
    #[error("rank must be at least 1")]
    ZeroRank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    /// `gl(V)`
    A,
    /// `sp(V)`
    C,
    /// `so(V)`, `dim V` even
    D,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::A => "A",
            Kind::C => "C",
            Kind::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" | "GL" => Ok(Kind::A),
            "C" | "SP" => Ok(Kind::C),
            "D" | "SO" => Ok(Kind::D),
            other => Err(format!("unknown kind '{other}' (expected A, C or D)")),
        }
    }
}

impl Kind {
    /// `dim V` for the given rank: `n` for A, `2r` for C and D.
    pub fn vdim(self, rank: usize) -> usize {
        match self {
            Kind::A => rank,
            Kind::C | Kind::D => 2 * rank,
        }
    }

    pub fn algebra_dim(self, vdim: usize) -> usize {
        let r = vdim / 2;
        match self {
            Kind::A => vdim * vdim,
            Kind::C => r * (2 * r + 1),
            Kind::D => r * (2 * r - 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCount {
    pub kind: Kind,
    pub rank: usize,
    pub n: u64,
}

/// Number of roots: `n(n−1)` for `GL_n`, `2r²` for `Sp_{2r}`, `2r(r−1)` for `SO_{2r}`.
pub fn num_roots(kind: Kind, rank: usize) -> RootCount {
    let r = rank as u64;
    let n = match kind {
        Kind::A => r * r.saturating_sub(1),
        Kind::C => 2 * r * r,
        Kind::D => 2 * r * r.saturating_sub(1),
    };
    RootCount { kind, rank, n }
}

/// A classical Lie algebra inside `End(V)`, with a canonical basis.
///
/// The basis is the reduced row echelon basis of `g` viewed inside the
/// flattened `n²`-dimensional space, so the coordinates of `T ∈ g` are read
/// off at the pivot entries.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    kind: Kind,
    vdim: usize,
    field: FieldDesc,
    gram: Option<Matrix>,
    ambient_form: Option<QuadForm>,
    flat: Subspace,
    basis: Vec<Matrix>,
}

pub fn flatten(m: &Matrix) -> Vector {
    m.entries().to_vec()
}

pub fn unflatten(field: &FieldDesc, n: usize, v: &[FieldElem]) -> Matrix {
    let rows: Vec<Vector> = v.chunks(n).map(|c| c.to_vec()).collect();
    Matrix::from_rows_with_cols(field, &rows, n)
}

/// Split symmetric Gram `S` with `S_{i,n−1−i} = 1`.
pub fn split_orthogonal_gram(field: &FieldDesc, n: usize) -> Matrix {
    let mut s = Matrix::zeros(field, n, n);
    for i in 0..n {
        s.set(i, n - 1 - i, FieldElem::ONE);
    }
    s
}

/// `Σ_{i<r} x_i x_{n−1−i}`
pub fn split_quadratic_form(field: &FieldDesc, n: usize) -> QuadForm {
    let mut q = QuadForm::zero(field, n);
    for i in 0..n / 2 {
        q.set_coeff(i, n - 1 - i, FieldElem::ONE);
    }
    q
}

/// Linear constraints (one row per condition) on flattened `T` cutting out `g`.
fn constraints(kind: Kind, field: &FieldDesc, gram: &Matrix) -> Matrix {
    let n = gram.rows();
    let mut rows: Vec<Vector> = Vec::new();
    // Column for E_ab is the image of the unit matrix; build conditions by
    // evaluating the defining map on each unit matrix.
    let images: Vec<Matrix> = (0..n * n)
        .map(|k| {
            let mut e = Matrix::zeros(field, n, n);
            e.set(k / n, k % n, FieldElem::ONE);
            match kind {
                // T^T J + J T
                Kind::C => e.transpose().mul(gram).add(&gram.mul(&e)),
                // T^T S, whose symmetric part and diagonal must vanish
                Kind::D => e.transpose().mul(gram),
                Kind::A => unreachable!(),
            }
        })
        .collect();
    match kind {
        Kind::C => {
            for i in 0..n {
                for j in 0..n {
                    rows.push(images.iter().map(|m| m.get(i, j)).collect());
                }
            }
        }
        Kind::D => {
            for i in 0..n {
                rows.push(images.iter().map(|m| m.get(i, i)).collect());
                for j in i + 1..n {
                    rows.push(
                        images
                            .iter()
                            .map(|m| field.add(m.get(i, j), m.get(j, i)))
                            .collect(),
                    );
                }
            }
        }
        Kind::A => unreachable!(),
    }
    Matrix::from_rows_with_cols(field, &rows, n * n)
}

/// Builds `g` for the given kind on `F^{vdim}` with the standard split forms.
pub fn build_algebra(kind: Kind, vdim: usize, field: &FieldDesc) -> Result<LieAlgebra, ClassicalError> {
    if matches!(kind, Kind::C | Kind::D) && vdim % 2 == 1 {
        return Err(ClassicalError::OddDimension(kind, vdim));
    }
    let n = vdim;
    let (gram, ambient_form, flat) = match kind {
        Kind::A => (None, None, Subspace::full(field, n * n)),
        Kind::C => {
            let j = standard_symplectic_gram(field, n / 2);
            let flat = constraints(kind, field, &j).kernel();
            (Some(j), None, flat)
        }
        Kind::D => {
            let s = split_orthogonal_gram(field, n);
            let flat = constraints(kind, field, &s).kernel();
            (Some(s), Some(split_quadratic_form(field, n)), flat)
        }
    };
    let basis = flat
        .basis_vectors()
        .iter()
        .map(|v| unflatten(field, n, v))
        .collect();
    Ok(LieAlgebra {
        kind,
        vdim,
        field: field.clone(),
        gram,
        ambient_form,
        flat,
        basis,
    })
}

impl LieAlgebra {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            Kind::A => self.vdim,
            Kind::C | Kind::D => self.vdim / 2,
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> Option<&Matrix> {
        self.gram.as_ref()
    }

    pub fn ambient_form(&self) -> Option<&QuadForm> {
        self.ambient_form.as_ref()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// `g` as a subspace of the flattened `End(V)`.
    pub fn as_subspace(&self) -> &Subspace {
        &self.flat
    }

    pub fn contains(&self, t: &Matrix) -> bool {
        self.flat.contains(&flatten(t))
    }

    pub fn coordinates(&self, t: &Matrix) -> Option<Vector> {
        self.flat.coordinates(&flatten(t))
    }

    pub fn element(&self, coords: &[FieldElem]) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.vdim, self.vdim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(*c));
            }
        }
        m
    }

    /// `Ad(g) T = g T g^{-1}`
    pub fn adjoint(&self, g: &Matrix, g_inv: &Matrix, t: &Matrix) -> Matrix {
        g.mul(t).mul(g_inv)
    }

    /// `(g·ξ)(T) = ξ(g^{-1} T g)`
    pub fn coadjoint(&self, g: &Matrix, g_inv: &Matrix, xi: &DualFunctional) -> DualFunctional {
        let coeffs = self
            .basis
            .iter()
            .map(|t| {
                let moved = g_inv.mul(t).mul(g);
                xi.eval(self, &moved)
            })
            .collect();
        DualFunctional { coeffs }
    }

    /// The rational points of the group (`GL`, `Sp` or `SO`), enumerated by
    /// column backtracking.
    pub fn enumerate_group(&self) -> Result<Vec<Matrix>, ClassicalError> {
        family_for(self.kind).enumerate_group(self)
    }

    /// Upper-triangular elements of `g`; a Borel subalgebra for the split forms.
    pub fn standard_borel(&self) -> Subspace {
        let n = self.vdim;
        let upper: Vec<Vector> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| crate::linalg::unit_vector(n * n, i * n + j))
            .collect();
        let upper = Subspace::span(&self.field, n * n, &upper);
        self.flat.intersect(&upper)
    }

    /// Distinct conjugates `g b g^{-1}` of the standard Borel under the given
    /// group elements, in first-seen order.
    pub fn rational_borels(&self, group: &[Matrix]) -> Vec<Subspace> {
        let b = self.standard_borel();
        let basis: Vec<Matrix> = b
            .basis_vectors()
            .iter()
            .map(|v| unflatten(&self.field, self.vdim, v))
            .collect();
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for g in group {
            let g_inv = g.inverse().expect("group element is invertible");
            let conj: Vec<Vector> = basis.iter().map(|t| flatten(&g.mul(t).mul(&g_inv))).collect();
            let s = Subspace::span(&self.field, self.vdim * self.vdim, &conj);
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
        out
    }
}

/// A linear form on `g`, stored as its values on the basis of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualFunctional {
    pub coeffs: Vector,
}

impl DualFunctional {
    pub fn zero(alg: &LieAlgebra) -> Self {
        DualFunctional {
            coeffs: vec![FieldElem::ZERO; alg.dim()],
        }
    }

    pub fn eval(&self, alg: &LieAlgebra, t: &Matrix) -> FieldElem {
        let c = alg.coordinates(t).expect("argument lies in g");
        dot(alg.field(), &self.coeffs, &c)
    }

    /// The functional `T ↦ tr(T X)` restricted to `g`.
    pub fn from_trace(alg: &LieAlgebra, x: &Matrix) -> Self {
        DualFunctional {
            coeffs: alg.basis().iter().map(|t| t.mul(x).trace()).collect(),
        }
    }

    /// Whether the functional vanishes on the subspace `b` of flattened `End(V)`.
    pub fn vanishes_on(&self, alg: &LieAlgebra, b: &Subspace) -> bool {
        b.basis_vectors().iter().all(|v| {
            let t = unflatten(alg.field(), alg.vdim(), v);
            self.eval(alg, &t).is_zero()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn dimensions() {
        let f2 = make_field(2, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(build_algebra(Kind::C, 2, &f2).unwrap().dim(), 3);
        assert_eq!(build_algebra(Kind::A, 3, &f2).unwrap().dim(), 9);
        assert_eq!(build_algebra(Kind::D, 4, &f3).unwrap().dim(), 6);
        assert_eq!(
            build_algebra(Kind::C, 3, &f2).unwrap_err(),
            ClassicalError::OddDimension(Kind::C, 3)
        );
    }

    #[test]
    fn root_counts() {
        assert_eq!(num_roots(Kind::A, 2).n, 2);
        assert_eq!(num_roots(Kind::C, 2).n, 8);
        assert_eq!(num_roots(Kind::D, 2).n, 4);
    }
}
