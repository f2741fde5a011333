//! The invariants `e, f, H_Q, m` and the recursive classifier returning the
//! unique filtration `V_*` with `Q ∈ ζ(V_*)`.

use serde::Serialize;

use crate::linalg::{quotient_map, Matrix, Subspace, Vector};
use crate::quadform::{QuadForm, SymplecticSpace};

use super::filtration::Filtration;
use super::label::PieceLabel;
use super::PiecesError;

#[derive(Clone, Debug)]
pub struct EFInvariants {
    /// Smallest `e ≥ 1` with `A^e = 0`.
    pub e: u32,
    /// Smallest `f ≥ 0` with `Q ∘ A^f = 0`.
    pub f: u32,
    pub h: Subspace,
    /// `max(e − 1, 2f − 1)`
    pub m: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    #[serde(skip)]
    pub filtration: Filtration,
    pub label: PieceLabel,
}

/// `{x ∈ D : φ(x) = 0}` for a form `φ` additive on `D` in characteristic 2:
/// there `φ(Σ c_i w_i) = (Σ c_i √φ(w_i))²`.
pub(crate) fn additive_zero_set(phi: &QuadForm, domain: &Subspace) -> Subspace {
    let f = phi.field();
    let basis = domain.basis_vectors();
    if basis.is_empty() {
        return domain.clone();
    }
    debug_assert!(phi.restrict(&basis).polar_matrix().is_zero(), "form is not additive on the domain");
    let row: Vector = basis.iter().map(|w| f.sqrt_char2(phi.eval(w))).collect();
    let coeffs = Matrix::from_rows(f, &[row]).kernel();
    let vs: Vec<Vector> = coeffs
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut v = vec![crate::gf::FieldElem::ZERO; domain.ambient()];
            for (ci, w) in c.iter().zip(&basis) {
                v = crate::linalg::vec_axpy(f, &v, *ci, w);
            }
            v
        })
        .collect();
    Subspace::span(f, domain.ambient(), &vs)
}

/// The invariants `e, f, H_Q, m` in characteristic 2 with `V ≠ 0`.
pub fn ef_invariants(space: &SymplecticSpace, q: &QuadForm) -> Result<EFInvariants, PiecesError> {
    let fd = space.field();
    if fd.characteristic() != 2 {
        return Err(PiecesError::OddCharacteristic);
    }
    let n = space.dim();
    if n == 0 {
        return Err(PiecesError::ZeroSpace);
    }
    let a = space.polarize(q);
    let e = a.nilpotency_index().ok_or(PiecesError::NotNilpotent)?.max(1);
    let mut f = 0;
    let mut ap = Matrix::identity(fd, n);
    while !q.compose(&ap).is_zero() {
        f += 1;
        ap = ap.mul(&a);
    }
    let ker_e1 = a.pow(e - 1).kernel();
    let h = if e > 2 * f {
        ker_e1
    } else {
        let phi = q.compose(&a.pow(f - 1));
        let domain = if e == 2 * f { ker_e1 } else { Subspace::full(fd, n) };
        additive_zero_set(&phi, &domain)
    };
    let m = (e as i32 - 1).max(2 * f as i32 - 1);
    Ok(EFInvariants { e, f, h, m })
}

/// Top degree `m` and `H = V_{≥−m+1}` for a nonzero nilpotent form: from
/// `e, f, H_Q` in characteristic 2, from the kernel of `A^{e−1}` otherwise.
fn top_step(space: &SymplecticSpace, q: &QuadForm) -> Result<(i32, Subspace), PiecesError> {
    if space.field().characteristic() == 2 {
        let inv = ef_invariants(space, q)?;
        Ok((inv.m, inv.h))
    } else {
        let a = space.polarize(q);
        let e = a.nilpotency_index().ok_or(PiecesError::NotNilpotent)?;
        let m = e as i32 - 1;
        Ok((m, a.pow(m as u32).kernel()))
    }
}

fn classify_rec(space: &SymplecticSpace, q: &QuadForm) -> Result<Filtration, PiecesError> {
    let f = space.field();
    let n = space.dim();
    if n == 0 || q.is_zero() {
        return Ok(Filtration::trivial(f, n));
    }
    let (m, h) = top_step(space, q)?;
    let fail = |what: &str| PiecesError::ClassificationFailed(what.to_string());
    if m < 1 {
        return Err(fail("nonzero form with top degree 0"));
    }
    let hp = space.perp(&h);
    if !h.contains_subspace(&hp) {
        return Err(fail("H^⊥ ⊄ H"));
    }
    let a = space.polarize(q);
    if !h.contains_subspace(&h.image_under(&a)) {
        return Err(fail("A H ⊄ H"));
    }
    if !q.restrict(&hp.basis_vectors()).is_zero() {
        return Err(fail("Q does not vanish on H^⊥"));
    }
    let qm = quotient_map(&h, &hp).map_err(|_| fail("H^⊥ ⊄ H"))?;
    if qm.dim() >= n {
        return Err(fail("no progress"));
    }
    let sub_space = SymplecticSpace::new(space.gram_of(&qm.section)).ok_or_else(|| fail("degenerate quotient"))?;
    let sub = classify_rec(&sub_space, &q.restrict(&qm.section))?;
    if qm.dim() > 0 && sub.top() > m - 1 {
        return Err(fail("quotient top degree too large"));
    }
    let levels = sub.lifted_levels(&hp, &|y| qm.lift(y), -m + 1, m);
    Ok(Filtration::new(f, n, -m + 1, levels))
}

/// The filtration `V_*` with `Q ∈ ζ(V_*)` and its label.
pub fn classify(space: &SymplecticSpace, q: &QuadForm) -> Result<Classification, PiecesError> {
    if !space.polarize(q).is_nilpotent() {
        return Err(PiecesError::NotNilpotent);
    }
    let filtration = classify_rec(space, q)?;
    let label = filtration
        .label()
        .filter(|l| l.is_admissible())
        .ok_or_else(|| PiecesError::ClassificationFailed("label is not admissible".into()))?;
    Ok(Classification { filtration, label })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn ef_examples() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        let z = ef_invariants(&s, &QuadForm::zero(&f, 2)).unwrap();
        assert_eq!((z.e, z.f, z.m), (1, 0, 0));
        // H = ker A^0 = 0
        assert!(z.h.is_zero());
        let sq = ef_invariants(&s, &QuadForm::from_ints(&f, 2, &[1, 0, 0])).unwrap();
        assert_eq!((sq.e, sq.f, sq.m), (1, 1, 1));
        assert_eq!(sq.h, Subspace::span(&f, 2, &[vec![f.zero(), f.one()]]));
    }

    #[test]
    fn refuses_odd_characteristic() {
        let f = make_field(3, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        assert_eq!(
            ef_invariants(&s, &QuadForm::zero(&f, 2)).unwrap_err(),
            PiecesError::OddCharacteristic
        );
    }

    #[test]
    fn classify_examples() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        let c = classify(&s, &QuadForm::zero(&f, 2)).unwrap();
        assert_eq!(c.label.to_string(), "f0=2");
        assert_eq!(c.filtration, Filtration::trivial(&f, 2));
        let c = classify(&s, &QuadForm::from_ints(&f, 2, &[1, 0, 0])).unwrap();
        assert_eq!(c.label.to_string(), "f-1=1 f1=1");
        let line = Subspace::span(&f, 2, &[vec![f.zero(), f.one()]]);
        assert_eq!(c.filtration.ge(0), line);
        assert_eq!(c.filtration.ge(1), line);
        assert!(c.filtration.ge(2).is_zero());
        assert!(c.filtration.ge(-1).is_full());
        let xy = QuadForm::from_ints(&f, 2, &[0, 1, 0]);
        assert_eq!(classify(&s, &xy).unwrap_err(), PiecesError::NotNilpotent);
    }
}
