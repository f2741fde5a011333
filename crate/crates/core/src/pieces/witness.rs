//! Symplectic transformations fixing a form in `Q(V)_2 − Q(V)_2^0` but not
//! the filtration `V_{≥i}`, and the converse stabilizer check on `Q(V)_2^0`.
//!
//! All constructions are carried out in the graded coordinates of the
//! grading and only in characteristic 2, where every sign is `+1`.

use serde::Serialize;

use crate::classical::{build_algebra, family_for, Grading, Kind, MAX_GROUP_ORDER};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::quadform::{QuadForm, SymplecticSpace};

use super::classify::additive_zero_set;
use super::membership::{graded_form, polar_radical, GradedForm};
use super::PiecesError;

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    #[serde(skip)]
    pub b: Matrix,
    /// Name of the recipe that produced `b`, or `"exhaustive"`.
    pub path: &'static str,
}

/// One construction of a witness from the graded data.
pub trait WitnessRecipe: Send + Sync {
    fn name(&self) -> &'static str;

    /// `None` when the recipe's hypothesis does not hold.
    fn construct(&self, g: &GradedForm) -> Option<Matrix>;
}

/// `x ↦ (u, x_d) v`, where `x_d` is the degree-`d` component.
fn rank_one(g: &GradedForm, v: &Vector, u: &Vector, d: i32) -> Matrix {
    let f = g.field();
    let n = g.dim();
    let row = g.gram.transpose().mul_vec(u);
    let mut m = Matrix::zeros(f, n, n);
    for c in g.indices(d) {
        if row[c].is_zero() {
            continue;
        }
        for r in 0..n {
            m.set(r, c, f.mul(v[r], row[c]));
        }
    }
    m
}

/// Nonzero vectors of `V_d ∩ ker M`.
fn kernel_in(g: &GradedForm, m: &Matrix, d: i32) -> Subspace {
    g.component(d).intersect(&m.kernel())
}

/// `A: V_{−i} → V_{−i+2}` not injective for some `i ≥ 2`.
struct NonInjective;

impl WitnessRecipe for NonInjective {
    fn name(&self) -> &'static str {
        "non-injective"
    }

    fn construct(&self, g: &GradedForm) -> Option<Matrix> {
        for i in g.support().into_iter().filter(|&d| d <= -2).map(|d| -d) {
            let k = kernel_in(g, &g.a, -i);
            if k.is_zero() {
                continue;
            }
            let e_lo = k.basis_vectors().remove(0);
            let k_hi = kernel_in(g, &g.a, i - 2);
            let e_hi = k_hi.basis_vectors().into_iter().next()?;
            let n = g.dim();
            let b = Matrix::identity(g.field(), n)
                .add(&rank_one(g, &e_lo, &e_hi, -i + 2))
                .add(&rank_one(g, &e_hi, &e_lo, i));
            return Some(b);
        }
        None
    }
}

/// Some even `n` with `A^n: V_{−n} → V_n` not bijective.
struct EvenPair;

impl WitnessRecipe for EvenPair {
    fn name(&self) -> &'static str {
        "even-pair"
    }

    fn construct(&self, g: &GradedForm) -> Option<Matrix> {
        for n in g.support().into_iter().filter(|&d| d <= -2 && d % 2 == 0).map(|d| -d) {
            let k = kernel_in(g, &g.a.pow(n as u32), -n);
            if k.dim() < 2 {
                continue;
            }
            let basis = k.basis_vectors();
            let powers = |v: &Vector| -> Vec<Vector> {
                let mut out = vec![v.clone()];
                for _ in 0..n {
                    let next = g.a.mul_vec(out.last().unwrap());
                    out.push(next);
                }
                out
            };
            // e[j] = A^j e_{−n} has degree 2j − n
            let (e, f) = (powers(&basis[0]), powers(&basis[1]));
            let mut b = Matrix::identity(g.field(), g.dim());
            for j in 0..n as usize {
                let partner = n as usize - j - 1;
                let d = 2 * j as i32 - n + 2;
                b = b.add(&rank_one(g, &e[j], &f[partner], d)).add(&rank_one(g, &f[j], &e[partner], d));
            }
            return Some(b);
        }
        None
    }
}

/// Some odd `2N+1` with `Q` degenerate on `A^N(V_{−2N−1})`.
struct OddDegenerate;

impl WitnessRecipe for OddDegenerate {
    fn name(&self) -> &'static str {
        "odd-degenerate"
    }

    fn construct(&self, g: &GradedForm) -> Option<Matrix> {
        for n_odd in g.support().into_iter().filter(|&d| d < 0 && d % 2 != 0).map(|d| -d) {
            let big_n = (n_odd - 1) / 2;
            let w = g.odd_image(n_odd);
            let radical = polar_radical(&g.q, &w);
            let zeros = additive_zero_set(&g.q, &radical);
            let Some(xi) = zeros.basis_vectors().into_iter().next() else {
                continue;
            };
            let src = g.indices(-n_odd);
            let an = g.a.pow(big_n as u32);
            let cols: Vec<usize> = (0..g.dim()).collect();
            let block = an.select(&cols, &src);
            let coeffs = block.solve(&xi)?;
            let mut e0 = crate::linalg::zero_vector(g.dim());
            for (c, &k) in coeffs.iter().zip(&src) {
                e0[k] = *c;
            }
            // e[j] = A^j e_{−2N−1} has degree 2j − 2N − 1
            let mut e = vec![e0];
            for _ in 0..=2 * big_n {
                let next = g.a.mul_vec(e.last().unwrap());
                e.push(next);
            }
            let mut b = Matrix::identity(g.field(), g.dim());
            for j in 0..=2 * big_n as usize {
                let partner = 2 * big_n as usize - j;
                let d = -2 * big_n + 2 * j as i32 + 1;
                b = b.add(&rank_one(g, &e[j], &e[partner], d));
            }
            return Some(b);
        }
        None
    }
}

static RECIPES: [&dyn WitnessRecipe; 3] = [&NonInjective, &EvenPair, &OddDegenerate];

pub fn witness_recipes() -> &'static [&'static dyn WitnessRecipe] {
    &RECIPES
}

/// `B^T G B = G`, `Q ∘ B = Q` and `B` moves some `V_{≥i}`.
pub fn verify_witness(space: &SymplecticSpace, q: &QuadForm, grading: &Grading, b: &Matrix) -> bool {
    space.preserves(b) && q.compose(b) == *q && !grading.preserves_filtration(b)
}

/// The rational points of `Sp(V)` for the standard Gram matrix.
pub fn symplectic_group(space: &SymplecticSpace) -> Result<Vec<Matrix>, PiecesError> {
    let alg = build_algebra(Kind::C, space.dim(), space.field()).expect("even dimension");
    if alg.gram() != Some(space.gram()) {
        return Err(PiecesError::NonStandardSpace);
    }
    family_for(Kind::C).enumerate_group(&alg).map_err(|_| {
        let q = space.field().order() as u128;
        PiecesError::SizeLimitExceeded {
            order: family_for(Kind::C).group_order(space.rank(), q),
            limit: MAX_GROUP_ORDER,
        }
    })
}

/// Elements of `group` fixing `Q`.
pub fn stabilizer(q: &QuadForm, group: &[Matrix]) -> Vec<Matrix> {
    group.iter().filter(|g| q.compose(g) == *q).cloned().collect()
}

/// A witness for `Q ∈ Q(V)_2 − Q(V)_2^0`: the first applicable recipe, or a
/// search through `fallback` (typically the stabilizer of `Q`) if given.
pub fn witness(
    space: &SymplecticSpace,
    q: &QuadForm,
    grading: &Grading,
    fallback: Option<&[Matrix]>,
) -> Result<Witness, PiecesError> {
    if space.field().characteristic() != 2 {
        return Err(PiecesError::OddCharacteristic);
    }
    let g = graded_form(space, q, grading)?;
    let m = g.membership();
    if !m.in_q2 {
        return Err(PiecesError::NotInQ2);
    }
    if m.in_q2_0 {
        return Err(PiecesError::AlreadyDistinguished);
    }
    for recipe in witness_recipes() {
        if let Some(bg) = recipe.construct(&g) {
            let b = grading.from_graded(&bg);
            if !verify_witness(space, q, grading, &b) {
                return Err(PiecesError::RecipeFailed(recipe.name()));
            }
            return Ok(Witness { b, path: recipe.name() });
        }
    }
    let candidates = fallback.ok_or(PiecesError::ConstructionInapplicable)?;
    candidates
        .iter()
        .find(|b| verify_witness(space, q, grading, b))
        .map(|b| Witness {
            b: b.clone(),
            path: "exhaustive",
        })
        .ok_or(PiecesError::ConstructionInapplicable)
}

/// Whether every element of `stab` (the rational stabilizer of `Q`) lies in
/// `G_{≥0}` for the grading.
pub fn stabilizer_subordinate(space: &SymplecticSpace, grading: &Grading, stab: &[Matrix]) -> Result<bool, PiecesError> {
    if !super::check_s_good(space, grading) {
        return Err(PiecesError::NotSGood);
    }
    Ok(stab.iter().all(|b| grading.preserves_filtration(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn rank_one_stabilizer() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        let group = symplectic_group(&s).unwrap();
        assert_eq!(group.len(), 6);
        let g = Grading::coordinate(&f, vec![-1, 1]);
        let sq = QuadForm::from_ints(&f, 2, &[1, 0, 0]);
        let stab = stabilizer(&sq, &group);
        assert!(stabilizer_subordinate(&s, &g, &stab).unwrap());
    }

    #[test]
    fn rank_one_witness() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        let g = Grading::coordinate(&f, vec![-1, 1]);
        let zero = QuadForm::zero(&f, 2);
        let group = symplectic_group(&s).unwrap();
        let w = witness(&s, &zero, &g, Some(&group)).unwrap();
        assert!(verify_witness(&s, &zero, &g, &w.b));
        let sq = QuadForm::from_ints(&f, 2, &[1, 0, 0]);
        assert_eq!(witness(&s, &sq, &g, None).unwrap_err(), PiecesError::AlreadyDistinguished);
    }
}
