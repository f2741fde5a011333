//! The isomorphism `σ: sp(V)* → Q(V)`.

use crate::classical::{build_algebra, flatten, unflatten, DualFunctional, Kind, LieAlgebra};
use crate::gf::FieldDesc;
use crate::linalg::Matrix;
use crate::quadform::{QuadForm, SymplecticSpace};

/// `σ(ξ)(a) = (X a, a)` for any `X` with `tr(T X) = ξ(T)` on `sp(V)`.
///
/// Both directions are also tabulated as matrices (`ξ` coordinates against
/// form coefficients) for the census inner loops.
#[derive(Clone, Debug)]
pub struct Sigma {
    alg: LieAlgebra,
    space: SymplecticSpace,
    /// Rows `k`: the trace equations `tr(T_k X) = ξ_k` on flattened `X`.
    trace_rows: Matrix,
    /// Column `s` is `σ^{-1}` of the `s`-th monomial.
    from_form: Matrix,
    to_form: Matrix,
}

impl Sigma {
    pub fn new(field: &FieldDesc, r: usize) -> Self {
        let alg = build_algebra(Kind::C, 2 * r, field).expect("even dimension");
        let space = SymplecticSpace::standard(field, r);
        let n = 2 * r;
        // tr(T X) = Σ_{i,j} T_ij X_ji
        let rows: Vec<_> = alg
            .basis()
            .iter()
            .map(|t| {
                let mut row = vec![field.zero(); n * n];
                for i in 0..n {
                    for j in 0..n {
                        row[j * n + i] = t.get(i, j);
                    }
                }
                row
            })
            .collect();
        let trace_rows = Matrix::from_rows_with_cols(field, &rows, n * n);
        let mut s = Sigma {
            alg,
            space,
            trace_rows,
            from_form: Matrix::zeros(field, 0, 0),
            to_form: Matrix::zeros(field, 0, 0),
        };
        let cols: Vec<_> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| s.dual_of_form_direct(&QuadForm::monomial(field, n, i, j)).coeffs)
            .collect();
        s.from_form = Matrix::from_cols(field, &cols);
        s.to_form = s.from_form.inverse().expect("σ is bijective");
        s
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    /// Matrix sending `ξ` coordinates to form coefficients.
    pub fn to_form_matrix(&self) -> &Matrix {
        &self.to_form
    }

    /// Matrix sending form coefficients to `ξ` coordinates.
    pub fn from_form_matrix(&self) -> &Matrix {
        &self.from_form
    }

    /// Picks a solution `X` of the trace equations and returns `a ↦ (X a, a)`.
    pub fn to_form(&self, xi: &DualFunctional) -> QuadForm {
        let f = self.alg.field();
        let n = self.space.dim();
        let x = self
            .trace_rows
            .solve(&xi.coeffs)
            .expect("trace pairing is nondegenerate on sp(V)");
        let x = unflatten(f, n, &x);
        QuadForm::from_matrix(&x.transpose().mul(self.space.gram()))
    }

    /// Tabulated version of [`Sigma::to_form`].
    pub fn to_form_fast(&self, xi: &DualFunctional) -> QuadForm {
        let n = self.space.dim();
        QuadForm::from_coeffs(self.alg.field(), n, self.to_form.mul_vec(&xi.coeffs))
    }

    pub fn from_form(&self, q: &QuadForm) -> DualFunctional {
        DualFunctional {
            coeffs: self.from_form.mul_vec(q.coeffs()),
        }
    }

    /// `X = (U J^{-1})^T` has `(X a, a) = a^T U a = Q(a)`; then `ξ = tr(· X)`.
    fn dual_of_form_direct(&self, q: &QuadForm) -> DualFunctional {
        let j_inv = self.space.gram().inverse().expect("nondegenerate");
        let x = q.upper_matrix().mul(&j_inv).transpose();
        DualFunctional {
            coeffs: self.trace_rows.mul_vec(&flatten(&x)),
        }
    }

    /// Whether `A_{σ(ξ)}` is nilpotent.
    pub fn nilpotent_dual_test(&self, xi: &DualFunctional) -> bool {
        self.space.polarize(&self.to_form_fast(xi)).is_nilpotent()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::linalg::all_vectors;

    #[test]
    fn round_trip_and_consistency() {
        for (p, r) in [(2, 1), (3, 1), (2, 2)] {
            let f = make_field(p, 1).unwrap();
            let s = Sigma::new(&f, r);
            assert_eq!(s.algebra().dim(), r * (2 * r + 1));
            for (k, q) in QuadForm::all(&f, 2 * r).enumerate() {
                if k > 300 {
                    break;
                }
                let xi = s.from_form(&q);
                assert_eq!(s.to_form(&xi), q);
                assert_eq!(s.to_form_fast(&xi), q);
            }
        }
    }

    #[test]
    fn equivariance_sp2_f2() {
        let f = make_field(2, 1).unwrap();
        let s = Sigma::new(&f, 1);
        let group = s.algebra().enumerate_group().unwrap();
        let mut pairs = 0;
        for g in &group {
            let g_inv = g.inverse().unwrap();
            for c in all_vectors(&f, s.algebra().dim()) {
                let xi = DualFunctional { coeffs: c };
                let moved = s.algebra().coadjoint(g, &g_inv, &xi);
                assert_eq!(s.to_form(&moved), s.to_form(&xi).compose(&g_inv));
                pairs += 1;
            }
        }
        assert_eq!(pairs, 48);
    }

    #[test]
    fn nilpotent_functionals_r1_f2() {
        let f = make_field(2, 1).unwrap();
        let s = Sigma::new(&f, 1);
        let count = all_vectors(&f, 3)
            .filter(|c| s.nilpotent_dual_test(&DualFunctional { coeffs: c.clone() }))
            .count();
        assert_eq!(count, 4);
        assert!(s.nilpotent_dual_test(&DualFunctional { coeffs: vec![f.zero(); 3] }));
        let xy = QuadForm::from_ints(&f, 2, &[0, 1, 0]);
        assert!(!s.nilpotent_dual_test(&s.from_form(&xy)));
    }
}
