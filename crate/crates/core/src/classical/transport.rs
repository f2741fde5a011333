//! The equivariant isomorphisms `ι: g → g*` for `gl(V)` and `so(V)`.

use crate::linalg::Matrix;

use super::{ClassicalError, DualFunctional, Kind, LieAlgebra};

/// `ι(T)` as a functional on `g`.
///
/// Type A: `ι(X)(T) = tr(T X)`.
///
/// Type D: the composite `T ↦ W_T = T^T S` (the alternating form `(Tx, y)`),
/// transported to `V*` through `S` as `Φ_T = S^{-1} W_T S^{-1}`, paired with
/// alternating forms on `V` by `⟨Φ, W⟩ = Σ_{i<j} Φ_ij W_ij`.
pub fn transport_iso(alg: &LieAlgebra, t: &Matrix) -> Result<DualFunctional, ClassicalError> {
    if !alg.contains(t) {
        return Err(ClassicalError::NotInAlgebra);
    }
    match alg.kind() {
        Kind::A => Ok(DualFunctional::from_trace(alg, t)),
        Kind::D => {
            let f = alg.field();
            let s = alg.gram().expect("orthogonal algebra has a Gram matrix");
            let s_inv = s.inverse().expect("split form is nondegenerate");
            let phi = s_inv.mul(&t.transpose().mul(s)).mul(&s_inv);
            let n = alg.vdim();
            let coeffs = alg
                .basis()
                .iter()
                .map(|b| {
                    let w = b.transpose().mul(s);
                    let mut acc = f.zero();
                    for i in 0..n {
                        for j in i + 1..n {
                            acc = f.add(acc, f.mul(phi.get(i, j), w.get(i, j)));
                        }
                    }
                    acc
                })
                .collect();
            Ok(DualFunctional { coeffs })
        }
        Kind::C => Err(ClassicalError::WrongKind(Kind::C)),
    }
}

/// Matrix of `ι` in the basis of `g` and its dual basis: column `k` is `ι(T_k)`.
pub fn transport_matrix(alg: &LieAlgebra) -> Result<Matrix, ClassicalError> {
    let cols = alg
        .basis()
        .iter()
        .map(|t| transport_iso(alg, t).map(|xi| xi.coeffs))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_cols(alg.field(), &cols))
}
