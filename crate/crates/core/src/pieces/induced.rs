//! The form `Q̄` induced on the associated graded of a filtration, and the
//! sets `ζ(V_*)`.

use crate::linalg::Matrix;
use crate::quadform::{QuadForm, SymplecticSpace};

use super::filtration::{Filtration, FiltrationFrame};
use super::membership::GradedForm;
use super::PiecesError;

/// Precomputed data for testing many forms against one filtration.
#[derive(Clone, Debug)]
pub struct ZetaTester {
    frame: FiltrationFrame,
    /// Gram matrix in the adapted basis.
    gram: Matrix,
    /// Induced Gram matrix on `gr(V_*)`: entries of total degree 0.
    gr_gram: Matrix,
    polar_to_op: Matrix,
}

impl ZetaTester {
    pub fn new(space: &SymplecticSpace, filt: &Filtration) -> Self {
        Self::with_frame(space, FiltrationFrame::new(filt))
    }

    fn with_frame(space: &SymplecticSpace, frame: FiltrationFrame) -> Self {
        let gram = frame.basis.transpose().mul(space.gram()).mul(&frame.basis);
        let deg = &frame.degrees;
        let n = deg.len();
        let mut gr_gram = Matrix::zeros(space.field(), n, n);
        for j in 0..n {
            for k in 0..n {
                if deg[j] + deg[k] == 0 {
                    gr_gram.set(j, k, gram.get(j, k));
                }
            }
        }
        let polar_to_op = space.gram().inverse().expect("nondegenerate").transpose();
        ZetaTester {
            frame,
            gram,
            gr_gram,
            polar_to_op,
        }
    }

    pub fn frame(&self) -> &FiltrationFrame {
        &self.frame
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// `A_Q(V_{≥a}) ⊆ V_{≥a+2}` for all `a` and `Q|_{V_{≥0}} = 0`.
    pub fn compatible(&self, q: &QuadForm) -> bool {
        let adapted = self.adapted(q);
        adapted.in_q_ge2()
    }

    fn adapted(&self, q: &QuadForm) -> GradedForm {
        let a = self.polar_to_op.mul(&q.polar_matrix());
        GradedForm {
            degrees: self.frame.degrees.clone(),
            gram: self.gram.clone(),
            q: q.compose(&self.frame.basis),
            a: self.frame.inverse.mul(&a).mul(&self.frame.basis),
        }
    }

    /// `Q̄(x) = Q(ẋ_{−1}) + Σ_{a ≤ −2} (A_Q ẋ_a, ẋ_{−a−2})` in the graded
    /// coordinates of the frame; requires compatibility.
    pub fn induced(&self, q: &QuadForm) -> Result<GradedForm, PiecesError> {
        let adapted = self.adapted(q);
        if !adapted.in_q_ge2() {
            return Err(PiecesError::NotCompatible);
        }
        Ok(self.induced_unchecked(&adapted))
    }

    fn induced_unchecked(&self, adapted: &GradedForm) -> GradedForm {
        let deg = &self.frame.degrees;
        // (A ẋ_a, ẋ_b) is the polar coefficient q'_jk for j ≠ k, so both terms
        // keep exactly the coefficients of total degree −2.
        let qbar = adapted.q.filter(|j, k| deg[j] + deg[k] == -2);
        GradedForm::new(self.gr_gram.clone(), qbar, deg.clone())
    }

    /// Whether `Q ∈ ζ(V_*)`.
    pub fn contains(&self, q: &QuadForm) -> bool {
        let adapted = self.adapted(q);
        adapted.in_q_ge2() && self.induced_unchecked(&adapted).membership().in_q2_0
    }
}

/// The induced form on `gr(V_*)`, recomputed from a second choice of lifts
/// and compared.
pub fn induced_form(space: &SymplecticSpace, q: &QuadForm, filt: &Filtration) -> Result<GradedForm, PiecesError> {
    let t = ZetaTester::new(space, filt);
    let first = t.induced(q)?;
    let other = ZetaTester::with_frame(space, t.frame().shifted());
    let second = other.induced(q)?;
    if first.q != second.q {
        return Err(PiecesError::LiftDependent);
    }
    Ok(first)
}

pub fn zeta_membership(space: &SymplecticSpace, q: &QuadForm, filt: &Filtration) -> bool {
    ZetaTester::new(space, filt).contains(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::Grading;
    use crate::gf::make_field;

    #[test]
    fn rank_one() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        let triv = Filtration::trivial(&f, 2);
        let zero = QuadForm::zero(&f, 2);
        let sq = QuadForm::from_ints(&f, 2, &[1, 0, 0]);
        assert!(zeta_membership(&s, &zero, &triv));
        assert!(induced_form(&s, &zero, &triv).unwrap().q.is_zero());
        assert!(!zeta_membership(&s, &sq, &triv));

        // V_{≥1} = V_{≥0} = span{e_1}
        let filt = Filtration::from_grading(&Grading::coordinate(&f, vec![-1, 1]));
        let qbar = induced_form(&s, &sq, &filt).unwrap();
        assert_eq!(qbar.degrees, vec![-1, 1]);
        assert_eq!(qbar.q, sq);
        assert!(zeta_membership(&s, &sq, &filt));
    }
}
