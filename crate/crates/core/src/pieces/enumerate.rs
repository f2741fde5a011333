//! Enumeration of the rational filtrations in `F_s(V)` and of the s-good
//! gradings of `V`.

use std::collections::{HashMap, HashSet};

use crate::classical::Grading;
use crate::linalg::{subspaces_of_dim, Matrix, Subspace, Vector};
use crate::quadform::SymplecticSpace;

use super::filtration::Filtration;
use super::label::{admissible_sequences, PieceLabel};

/// Every rational filtration, grouped by label in label order.
///
/// A filtration is determined by its isotropic chain `V_{≥t} ⊆ … ⊆ V_{≥1}`;
/// the lower levels are the perps `V_{≥a} = V_{≥1−a}^⊥`.
pub fn rational_filtrations(space: &SymplecticSpace) -> Vec<(PieceLabel, Vec<Filtration>)> {
    let n = space.dim();
    let f = space.field();
    let mut isotropic: HashMap<usize, Vec<Subspace>> = HashMap::new();
    let mut out = Vec::new();
    for label in admissible_sequences(n) {
        let t = label.top();
        let mut found = Vec::new();
        if t == 0 {
            found.push(Filtration::trivial(f, n));
        } else {
            let dims: Vec<usize> = (1..=t).map(|a| label.dim_ge(a)).collect();
            let tops = isotropic
                .entry(dims[0])
                .or_insert_with(|| {
                    subspaces_of_dim(f, n, dims[0])
                        .into_iter()
                        .filter(|u| space.is_isotropic(u))
                        .collect()
                })
                .clone();
            for u1 in tops {
                let mut chain = vec![u1];
                chains(&dims, &mut chain, &mut |c| {
                    let levels: Vec<Subspace> = (-t + 1..=t)
                        .map(|a| {
                            if a >= 1 {
                                c[(a - 1) as usize].clone()
                            } else {
                                let b = 1 - a;
                                if b > t {
                                    Subspace::full(f, n)
                                } else {
                                    space.perp(&c[(b - 1) as usize])
                                }
                            }
                        })
                        .collect();
                    found.push(Filtration::new(f, n, -t + 1, levels));
                });
            }
        }
        out.push((label, found));
    }
    out
}

/// Extends `chain` (currently `U_1 ⊇ … ⊇ U_k`) by subspaces of the required dimensions.
fn chains(dims: &[usize], chain: &mut Vec<Subspace>, emit: &mut dyn FnMut(&[Subspace])) {
    let k = chain.len();
    if k == dims.len() {
        emit(chain);
        return;
    }
    let parent = chain[k - 1].clone();
    let basis = parent.basis_vectors();
    let f = parent.field().clone();
    for s in subspaces_of_dim(&f, basis.len(), dims[k]) {
        let vs: Vec<Vector> = s
            .basis_vectors()
            .iter()
            .map(|c| {
                let mut v = crate::linalg::zero_vector(parent.ambient());
                for (ci, b) in c.iter().zip(&basis) {
                    v = crate::linalg::vec_axpy(&f, &v, *ci, b);
                }
                v
            })
            .collect();
        chain.push(Subspace::span(&f, parent.ambient(), &vs));
        chains(dims, chain, emit);
        chain.pop();
    }
}

/// A coordinate s-good grading with the given label for the standard Gram
/// matrix: the pair `(e_k, e_{n−1−k})` gets degrees `(−a, a)`.
pub fn standard_grading(space: &SymplecticSpace, label: &PieceLabel) -> Grading {
    let n = space.dim();
    let mut pair_degrees = Vec::new();
    for a in (1..=label.top()).rev() {
        pair_degrees.extend(std::iter::repeat_n(a, label.f(a)));
    }
    pair_degrees.extend(std::iter::repeat_n(0, label.f(0) / 2));
    let mut degrees = vec![0; n];
    for (k, &a) in pair_degrees.iter().enumerate() {
        degrees[k] = -a;
        degrees[n - 1 - k] = a;
    }
    Grading::coordinate(space.field(), degrees)
}

/// Every s-good grading of `V`, as the orbits of the standard ones under
/// `group`, deduplicated by their components.
pub fn rational_gradings(space: &SymplecticSpace, group: &[Matrix]) -> Vec<(PieceLabel, Vec<Grading>)> {
    admissible_sequences(space.dim())
        .into_iter()
        .map(|label| {
            let rep = standard_grading(space, &label);
            let mut seen = HashSet::new();
            let mut orbit = Vec::new();
            for g in group {
                let moved = rep.act(g);
                if seen.insert(moved.key()) {
                    orbit.push(moved);
                }
            }
            (label, orbit)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::pieces::check_s_good;

    #[test]
    fn rank_one_counts() {
        let f = make_field(2, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 1);
        let filts = rational_filtrations(&s);
        let total: usize = filts.iter().map(|(_, v)| v.len()).sum();
        assert_eq!(total, 4);
        for (label, v) in &filts {
            for filt in v {
                assert!(filt.is_valid(s.gram()));
                assert_eq!(&filt.label().unwrap(), label);
            }
        }
    }

    #[test]
    fn standard_gradings_are_s_good() {
        let f = make_field(3, 1).unwrap();
        for r in 0..=3 {
            let s = SymplecticSpace::standard(&f, r);
            for label in admissible_sequences(2 * r) {
                let g = standard_grading(&s, &label);
                assert!(check_s_good(&s, &g), "{label}");
                assert_eq!(PieceLabel::from_graded(&g.dims()).unwrap(), label);
            }
        }
    }
}
