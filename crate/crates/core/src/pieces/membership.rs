//! Membership of a form in `Q(V)_2`, `Q(V)_2^0` and `Q(V)_{≥2}` for a grading.

use serde::Serialize;

use crate::classical::Grading;
use crate::gf::FieldDesc;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::quadform::{QuadForm, SymplecticSpace};

use super::PiecesError;

/// A form, its Gram matrix and `A_Q` written in a basis whose vectors carry
/// degrees.
#[derive(Clone, Debug)]
pub struct GradedForm {
    pub degrees: Vec<i32>,
    pub gram: Matrix,
    pub q: QuadForm,
    pub a: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub in_q2: bool,
    pub in_q2_0: bool,
    pub in_q_ge2: bool,
}

impl GradedForm {
    /// Coordinates in which standard basis vector `k` has degree `degrees[k]`.
    pub fn new(gram: Matrix, q: QuadForm, degrees: Vec<i32>) -> Self {
        let space = SymplecticSpace::new(gram.clone()).expect("nondegenerate Gram matrix");
        let a = space.polarize(&q);
        GradedForm { degrees, gram, q, a }
    }

    /// `Q` and the Gram matrix rewritten in the grading's basis.
    pub fn from_grading(space: &SymplecticSpace, q: &QuadForm, grading: &Grading) -> Self {
        let gram = grading.gram_to_graded(space.gram());
        let qg = grading.form_to_graded(q);
        let a = grading.to_graded(&space.polarize(q));
        GradedForm {
            degrees: grading.degrees().to_vec(),
            gram,
            q: qg,
            a,
        }
    }

    pub fn field(&self) -> &FieldDesc {
        self.q.field()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Coordinate indices of degree `i`.
    pub fn indices(&self, i: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.degrees[k] == i).collect()
    }

    /// `V_i` as a coordinate subspace.
    pub fn component(&self, i: i32) -> Subspace {
        let n = self.dim();
        let vs: Vec<Vector> = self.indices(i).into_iter().map(|k| crate::linalg::unit_vector(n, k)).collect();
        Subspace::span(self.field(), n, &vs)
    }

    /// Degrees `i` with `V_i ≠ 0`.
    pub fn support(&self) -> Vec<i32> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `A V_i ⊆ V_{i+2}` for all `i`, and `Q|_{V_i} = 0` for `i ≠ −1`.
    pub fn in_q2(&self) -> bool {
        let n = self.dim();
        let deg = &self.degrees;
        let a_ok = (0..n).all(|r| (0..n).all(|c| self.a.get(r, c).is_zero() || deg[r] == deg[c] + 2));
        let q_ok = (0..n).all(|j| (j..n).all(|k| deg[j] != deg[k] || deg[j] == -1 || self.q.coeff(j, k).is_zero()));
        a_ok && q_ok
    }

    /// `A V_{≥i} ⊆ V_{≥i+2}` for all `i`, and `Q|_{V_{≥0}} = 0`.
    pub fn in_q_ge2(&self) -> bool {
        let n = self.dim();
        let deg = &self.degrees;
        let a_ok = (0..n).all(|r| (0..n).all(|c| self.a.get(r, c).is_zero() || deg[r] >= deg[c] + 2));
        let q_ok = (0..n).all(|j| (j..n).all(|k| deg[j] < 0 || deg[k] < 0 || self.q.coeff(j, k).is_zero()));
        a_ok && q_ok
    }

    /// Block of `A^n` from `V_{from}` to `V_{to}`.
    fn power_block(&self, n: u32, to: i32, from: i32) -> Matrix {
        self.a.pow(n).select(&self.indices(to), &self.indices(from))
    }

    /// The two extra conditions: `A^n: V_{−n} → V_n` bijective for even
    /// `n ≥ 2`, and for odd `n` with `V_{−n} ≠ 0`, `A^{(n−1)/2}: V_{−n} → V_{−1}`
    /// injective with `Q` nondegenerate on its image.
    fn distinguished(&self) -> bool {
        for n in self.support().into_iter().filter(|&i| i < 0).map(|i| -i) {
            if n % 2 == 0 {
                let b = self.power_block(n as u32, n, -n);
                if !b.is_square() || !b.is_invertible() {
                    return false;
                }
            } else {
                let k = ((n - 1) / 2) as u32;
                let b = self.power_block(k, -1, -n);
                if b.rank() != b.cols() {
                    return false;
                }
                if !is_nondegenerate(&self.q, &self.odd_image(n)) {
                    return false;
                }
            }
        }
        true
    }

    /// `A^{(n−1)/2}(V_{−n})` for odd `n`.
    pub fn odd_image(&self, n: i32) -> Subspace {
        let k = ((n - 1) / 2) as u32;
        self.component(-n).image_under(&self.a.pow(k))
    }

    pub fn membership(&self) -> Membership {
        let in_q2 = self.in_q2();
        let in_q_ge2 = self.in_q_ge2();
        Membership {
            in_q2,
            in_q2_0: in_q2 && self.distinguished(),
            in_q_ge2,
        }
    }
}

/// The radical `{w ∈ W : B(w, W) = 0}` of the polar form of `Q` on `W`.
pub fn polar_radical(q: &QuadForm, w: &Subspace) -> Subspace {
    let basis = w.basis_vectors();
    if basis.is_empty() {
        return w.clone();
    }
    let p = q.restrict(&basis).polar_matrix();
    let coeffs = p.kernel().basis_vectors();
    let vs: Vec<Vector> = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![crate::gf::FieldElem::ZERO; w.ambient()];
            for (ci, b) in c.iter().zip(&basis) {
                v = crate::linalg::vec_axpy(q.field(), &v, *ci, b);
            }
            v
        })
        .collect();
    Subspace::span(q.field(), w.ambient(), &vs)
}

/// Nondegeneracy of `Q|_W`: trivial polar radical, or in characteristic 2 a
/// radical line on which `Q` does not vanish.
pub fn is_nondegenerate(q: &QuadForm, w: &Subspace) -> bool {
    let r = polar_radical(q, w);
    match r.dim() {
        0 => true,
        1 if q.field().characteristic() == 2 => !q.eval(&r.basis_vectors()[0]).is_zero(),
        _ => false,
    }
}

/// Checks that `grading` is s-good for the space and returns the graded form.
pub fn graded_form(space: &SymplecticSpace, q: &QuadForm, grading: &Grading) -> Result<GradedForm, PiecesError> {
    if !check_s_good(space, grading) {
        return Err(PiecesError::NotSGood);
    }
    Ok(GradedForm::from_grading(space, q, grading))
}

pub fn membership(space: &SymplecticSpace, q: &QuadForm, grading: &Grading) -> Result<Membership, PiecesError> {
    Ok(graded_form(space, q, grading)?.membership())
}

/// The s-good conditions for a grading of a symplectic space.
pub fn check_s_good(space: &SymplecticSpace, grading: &Grading) -> bool {
    grading.dim() == space.dim() && grading.dims_ok(Some(true)) && grading.pairing_ok(space.gram())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn rank_one_examples() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        let triv = Grading::coordinate(&f, vec![0, 0]);
        let zero = QuadForm::zero(&f, 2);
        let m = membership(&s, &zero, &triv).unwrap();
        assert!(m.in_q2 && m.in_q2_0 && m.in_q_ge2);

        let g = Grading::coordinate(&f, vec![-1, 1]);
        let sq = QuadForm::from_ints(&f, 2, &[1, 0, 0]);
        let m = membership(&s, &sq, &g).unwrap();
        assert!(m.in_q2 && m.in_q2_0);
        let m = membership(&s, &zero, &g).unwrap();
        assert!(m.in_q2 && !m.in_q2_0);
    }

    #[test]
    fn s_good_examples() {
        let f = make_field(2, 1).unwrap();
        let s1 = SymplecticSpace::standard(&f, 1);
        assert!(check_s_good(&s1, &Grading::coordinate(&f, vec![0, 0])));
        assert!(!check_s_good(&s1, &Grading::coordinate(&f, vec![-2, 2])));
        let s2 = SymplecticSpace::standard(&f, 2);
        assert!(check_s_good(&s2, &Grading::coordinate(&f, vec![-1, 0, 0, 1])));
        assert_eq!(
            membership(&s1, &QuadForm::zero(&f, 2), &Grading::coordinate(&f, vec![-2, 2])).unwrap_err(),
            PiecesError::NotSGood
        );
    }

    #[test]
    fn nondegeneracy_char2() {
        let f = make_field(2, 1).unwrap();
        let full = Subspace::full(&f, 1);
        assert!(is_nondegenerate(&QuadForm::from_ints(&f, 1, &[1]), &full));
        assert!(!is_nondegenerate(&QuadForm::zero(&f, 1), &full));
        let full2 = Subspace::full(&f, 2);
        assert!(is_nondegenerate(&QuadForm::from_ints(&f, 2, &[0, 1, 0]), &full2));
        assert!(!is_nondegenerate(&QuadForm::from_ints(&f, 2, &[1, 0, 1]), &full2));
    }
}
