//! Quadratic forms on a symplectic space: polarization, the identification
//! `sp(V)* ≅ Q(V)`, nilpotency, good bases and polarization fibres.

mod good_basis;
mod sigma;

pub use good_basis::{
    find_isotropic, find_isotropic_extending, good_basis, good_basis_with_cap, verify_good_basis, GoodBasis,
};
pub use sigma::Sigma;

use thiserror::Error;

use crate::classical::flatten;
use crate::linalg::Matrix;
use crate::quadform::{form_dim, QuadForm, SymplecticSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormsError {
    #[error("A_Q is not nilpotent")]
    NotNilpotent,
    #[error("no isotropic vector within extension degree {cap}")]
    ExtensionCapExceeded { cap: u32 },
    #[error("trace correction failed: coefficient of e_(-{0}) is nonzero")]
    TraceCheckFailed(usize),
    #[error("matrix is not alternating for the symplectic form")]
    NotAlternating,
    #[error("form has {got} variables, space has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// `A_Q` with `(A_Q x, y) = Q(x+y) − Q(x) − Q(y)`.
pub fn polarize(space: &SymplecticSpace, q: &QuadForm) -> Matrix {
    space.polarize(q)
}

/// Whether `(A x, x) = 0` for every `x`, i.e. `A^T G` is alternating.
pub fn is_alternating(space: &SymplecticSpace, a: &Matrix) -> bool {
    let f = space.field();
    let w = a.transpose().mul(space.gram());
    let n = space.dim();
    (0..n).all(|i| w.get(i, i).is_zero() && (i + 1..n).all(|j| f.add(w.get(i, j), w.get(j, i)).is_zero()))
}

/// Matrix of the linear map `Q ↦ A_Q` from coefficient vectors to flattened
/// endomorphisms.
pub fn polarization_matrix(space: &SymplecticSpace) -> Matrix {
    let f = space.field();
    let n = space.dim();
    let cols: Vec<_> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| flatten(&space.polarize(&QuadForm::monomial(f, n, i, j))))
        .collect();
    debug_assert_eq!(cols.len(), form_dim(n));
    Matrix::from_cols(f, &cols)
}

/// Number of forms `Q` over the space's field with `A_Q = A`.
pub fn fiber_count(space: &SymplecticSpace, a: &Matrix) -> Result<u128, FormsError> {
    if a.rows() != space.dim() || a.cols() != space.dim() {
        return Err(FormsError::DimensionMismatch {
            expected: space.dim(),
            got: a.rows(),
        });
    }
    if !is_alternating(space, a) {
        return Err(FormsError::NotAlternating);
    }
    let m = polarization_matrix(space);
    if m.solve(&flatten(a)).is_none() {
        return Ok(0);
    }
    let q = space.field().order() as u128;
    Ok(q.pow(m.kernel().dim() as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::linalg::all_vectors;

    #[test]
    fn polarize_examples() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        assert!(polarize(&s, &QuadForm::zero(&f, 2)).is_zero());
        assert_eq!(polarize(&s, &QuadForm::from_ints(&f, 2, &[0, 1, 0])), Matrix::identity(&f, 2));
        assert!(polarize(&s, &QuadForm::from_ints(&f, 2, &[1, 0, 0])).is_zero());
    }

    #[test]
    fn polarize_defining_identity() {
        for p in [2, 3] {
            let f = make_field(p, 1).unwrap();
            let s = SymplecticSpace::standard(&f, 1);
            for q in QuadForm::all(&f, 2) {
                let a = polarize(&s, &q);
                for x in all_vectors(&f, 2) {
                    for y in all_vectors(&f, 2) {
                        let xy = crate::linalg::vec_add(&f, &x, &y);
                        let lhs = f.sub(f.sub(q.eval(&xy), q.eval(&x)), q.eval(&y));
                        assert_eq!(lhs, s.pair(&a.mul_vec(&x), &y));
                    }
                }
                if p == 2 {
                    assert!(is_alternating(&s, &a));
                }
            }
        }
    }

    #[test]
    fn fiber_examples() {
        let f = make_field(2, 1).unwrap();
        let s1 = SymplecticSpace::standard(&f, 1);
        assert_eq!(fiber_count(&s1, &Matrix::zeros(&f, 2, 2)).unwrap(), 4);
        assert_eq!(fiber_count(&s1, &Matrix::identity(&f, 2)).unwrap(), 4);
        let s2 = SymplecticSpace::standard(&f, 2);
        assert_eq!(fiber_count(&s2, &Matrix::zeros(&f, 4, 4)).unwrap(), 16);
        let bad = Matrix::from_ints(&f, &[&[1, 0], &[0, 0]]);
        assert_eq!(fiber_count(&s1, &bad), Err(FormsError::NotAlternating));
    }
}
