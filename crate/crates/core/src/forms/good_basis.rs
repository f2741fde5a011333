//! Good bases for a form with nilpotent polarization.
//!
//! A basis `(e_i)` indexed by the odd integers `i ∈ [−2r+1, 2r−1]` is good if
//! `(e_i, e_j) = 0` unless `i + j = 0`, and `(e_i, e_{−i}) = 1` for `i > 0`
//! (so `−1` for `i < 0`; the sign only matters in odd characteristic).

use crate::gf::{extend, Embedding, FieldDesc, FieldElem};
use crate::linalg::{quotient_map, Frame, Matrix, Subspace, Vector};
use crate::quadform::{QuadForm, SymplecticSpace};

use super::FormsError;

/// Subspaces up to this many elements are searched exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct GoodBasis {
    /// The field the basis lives over.
    pub field: FieldDesc,
    /// Embedding of the input field into `field`.
    pub embedding: Embedding,
    /// `vectors[k]` is `e_{2k−2r+1}`.
    pub vectors: Vec<Vector>,
}

impl GoodBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len() / 2
    }

    pub fn indices(&self) -> Vec<i32> {
        let r = self.rank() as i32;
        (0..2 * r).map(|k| 2 * k - 2 * r + 1).collect()
    }

    fn position(&self, i: i32) -> usize {
        ((i + 2 * self.rank() as i32 - 1) / 2) as usize
    }

    pub fn vector(&self, i: i32) -> &Vector {
        &self.vectors[self.position(i)]
    }

    /// Degree of the field extension used (1 if none).
    pub fn extension_degree(&self) -> u32 {
        self.field.degree() / self.embedding.source.degree()
    }

    /// The basis vectors as columns, in index order.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_cols(&self.field, &self.vectors)
    }
}

enum Step {
    NeedsExtension,
    Fail(FormsError),
}

impl From<FormsError> for Step {
    fn from(e: FormsError) -> Self {
        Step::Fail(e)
    }
}

fn embed_subspace(k: &Subspace, emb: &Embedding) -> Subspace {
    let vs: Vec<Vector> = k
        .basis_vectors()
        .iter()
        .map(|v| v.iter().map(|&c| emb.apply(c)).collect())
        .collect();
    Subspace::span(&emb.target, k.ambient(), &vs)
}

/// A nonzero `v ∈ k` with `Q(v) = 0`, if one exists over the current field.
///
/// Small subspaces are searched in lexicographic order of echelon
/// coordinates. Larger ones only look at the span of the first two echelon
/// basis vectors and solve the binary form there.
pub fn find_isotropic(q: &QuadForm, k: &Subspace) -> Option<Vector> {
    let f = q.field();
    if k.dim() == 0 {
        return None;
    }
    let size = (f.order() as u64).checked_pow(k.dim() as u32);
    if size.is_some_and(|s| s <= EXHAUSTIVE_LIMIT) {
        return k
            .elements()
            .into_iter()
            .skip(1)
            .find(|v| q.eval(v).is_zero());
    }
    let basis = k.basis_vectors();
    let u = &basis[0];
    if q.eval(u).is_zero() {
        return Some(u.clone());
    }
    let w = &basis[1];
    // Q(a u + w) = a² Q(u) + a B(u, w) + Q(w)
    let (qu, qw) = (q.eval(u), q.eval(w));
    let b = crate::linalg::dot(f, u, &q.polar_matrix().mul_vec(w));
    let a = f
        .elements()
        .find(|&a| f.add(f.add(f.mul(f.mul(a, a), qu), f.mul(a, b)), qw).is_zero())?;
    Some(crate::linalg::vec_axpy(f, w, a, u))
}

/// Like [`find_isotropic`], extending the field by degrees `2, 4, …` up to
/// `cap` when no isotropic vector exists over the current field.
pub fn find_isotropic_extending(
    q: &QuadForm,
    k: &Subspace,
    cap: u32,
) -> Result<(Embedding, Vector), FormsError> {
    let f = q.field();
    if let Some(v) = find_isotropic(q, k) {
        return Ok((Embedding::identity(f), v));
    }
    let mut m = 2;
    while m <= cap {
        let (_, emb) = extend(f, m).map_err(|_| FormsError::ExtensionCapExceeded { cap })?;
        if let Some(v) = find_isotropic(&q.embed(&emb), &embed_subspace(k, &emb)) {
            return Ok((emb, v));
        }
        m *= 2;
    }
    Err(FormsError::ExtensionCapExceeded { cap })
}

pub fn good_basis(space: &SymplecticSpace, q: &QuadForm) -> Result<GoodBasis, FormsError> {
    good_basis_with_cap(space, q, crate::gf::DEFAULT_EXTENSION_CAP)
}

/// Builds a good basis with `A_Q e_i ∈ span{e_j : j > i}` and `Q(e_i) = 0`
/// for `i > 0`, extending the field (degree at most `cap`) if an isotropic
/// kernel vector is missing at some stage.
pub fn good_basis_with_cap(space: &SymplecticSpace, q: &QuadForm, cap: u32) -> Result<GoodBasis, FormsError> {
    if q.nvars() != space.dim() {
        return Err(FormsError::DimensionMismatch {
            expected: space.dim(),
            got: q.nvars(),
        });
    }
    if !space.polarize(q).is_nilpotent() {
        return Err(FormsError::NotNilpotent);
    }
    let base = space.field();
    let mut m = 1;
    loop {
        let emb = if m == 1 {
            Embedding::identity(base)
        } else {
            extend(base, m).map_err(|_| FormsError::ExtensionCapExceeded { cap })?.1
        };
        match build(&space.gram().embed(&emb), &q.embed(&emb)) {
            Ok(vectors) => {
                return Ok(GoodBasis {
                    field: emb.target.clone(),
                    embedding: emb,
                    vectors,
                })
            }
            Err(Step::Fail(e)) => return Err(e),
            Err(Step::NeedsExtension) => {
                m *= 2;
                if m > cap {
                    return Err(FormsError::ExtensionCapExceeded { cap });
                }
            }
        }
    }
}

/// One step of the induction: `v ∈ ker A` isotropic, recurse on
/// `v^⊥ / kv`, lift, and complete with a vector pairing to `−1` with `v`.
fn build(gram: &Matrix, q: &QuadForm) -> Result<Vec<Vector>, Step> {
    let d = gram.rows();
    if d == 0 {
        return Ok(Vec::new());
    }
    let f = gram.field().clone();
    let space = SymplecticSpace::new(gram.clone()).expect("nondegenerate at every stage");
    let a = space.polarize(q);
    let v = find_isotropic(q, &a.kernel()).ok_or(Step::NeedsExtension)?;
    let line = Subspace::span(&f, d, std::slice::from_ref(&v));
    let qm = quotient_map(&space.perp(&line), &line).expect("v is isotropic");
    let sub = build(&space.gram_of(&qm.section), &q.restrict(&qm.section))?;
    let lifted: Vec<Vector> = sub.iter().map(|y| qm.lift(y)).collect();

    let mut rows: Vec<Vector> = lifted.iter().map(|u| gram.mul_vec(u)).collect();
    rows.push(gram.mul_vec(&v));
    let mut rhs = vec![FieldElem::ZERO; lifted.len()];
    rhs.push(f.neg(f.one()));
    let x = Matrix::from_rows_with_cols(&f, &rows, d)
        .solve(&rhs)
        .expect("pairing equations are independent");

    let mut vectors = Vec::with_capacity(d);
    vectors.push(x);
    vectors.extend(lifted);
    vectors.push(v);
    let frame = Frame::new(&f, d, vectors.clone()).expect("good basis is a basis");
    let ax = frame.coords_unchecked(&a.mul_vec(&vectors[0]));
    if !ax[0].is_zero() {
        return Err(FormsError::TraceCheckFailed(d - 1).into());
    }
    Ok(vectors)
}

/// Checks the good-basis postconditions; the error names the first failure.
pub fn verify_good_basis(space: &SymplecticSpace, q: &QuadForm, gb: &GoodBasis) -> Result<(), String> {
    let emb = &gb.embedding;
    let f = &gb.field;
    let gram = space.gram().embed(emb);
    let q = q.embed(emb);
    let sp = SymplecticSpace::new(gram).expect("nondegenerate");
    let a = sp.polarize(&q);
    let idx = gb.indices();
    if gb.vectors.len() != space.dim() {
        return Err(format!("expected {} vectors, got {}", space.dim(), gb.vectors.len()));
    }
    for (s, &i) in idx.iter().enumerate() {
        for (t, &j) in idx.iter().enumerate() {
            let got = sp.pair(&gb.vectors[s], &gb.vectors[t]);
            let want = match (i + j, i > 0) {
                (0, true) => f.one(),
                (0, false) => f.neg(f.one()),
                _ => f.zero(),
            };
            if got != want {
                return Err(format!("(e_{i}, e_{j}) is wrong"));
            }
        }
    }
    let frame = Frame::new(f, space.dim(), gb.vectors.clone()).map_err(|_| "vectors are dependent".to_string())?;
    for (s, &i) in idx.iter().enumerate() {
        let c = frame.coords_unchecked(&a.mul_vec(&gb.vectors[s]));
        if c.iter().take(s + 1).any(|x| !x.is_zero()) {
            return Err(format!("A e_{i} is not in the span of later vectors"));
        }
        if i > 0 && !q.eval(&gb.vectors[s]).is_zero() {
            return Err(format!("Q(e_{i}) ≠ 0"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn rank_zero() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 0);
        let gb = good_basis(&s, &QuadForm::zero(&f, 0)).unwrap();
        assert!(gb.vectors.is_empty());
    }

    #[test]
    fn square_form_r1() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        let q = QuadForm::from_ints(&f, 2, &[1, 0, 0]);
        let gb = good_basis(&s, &q).unwrap();
        assert_eq!(gb.vector(1), &vec![f.zero(), f.one()]);
        assert_eq!(gb.vector(-1), &vec![f.one(), f.zero()]);
        verify_good_basis(&s, &q, &gb).unwrap();
    }

    #[test]
    fn rejects_non_nilpotent() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        let q = QuadForm::from_ints(&f, 2, &[0, 1, 0]);
        assert_eq!(good_basis(&s, &q).unwrap_err(), FormsError::NotNilpotent);
    }

    #[test]
    fn anisotropic_binary_form_needs_extension() {
        let f = make_field(2, 1).unwrap();
        let q = QuadForm::from_ints(&f, 2, &[1, 1, 1]);
        let k = Subspace::full(&f, 2);
        assert!(find_isotropic(&q, &k).is_none());
        let (emb, v) = find_isotropic_extending(&q, &k, 2).unwrap();
        assert_eq!(emb.target.order(), 4);
        assert!(q.embed(&emb).eval(&v).is_zero());
        assert_eq!(
            find_isotropic_extending(&q, &k, 1).unwrap_err(),
            FormsError::ExtensionCapExceeded { cap: 1 }
        );
    }
}
