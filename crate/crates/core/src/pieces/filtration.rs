//! Decreasing filtrations `V_{≥a}` of a symplectic space and adapted bases.

use std::collections::BTreeMap;

use crate::classical::Grading;
use crate::gf::FieldDesc;
use crate::linalg::{Matrix, Subspace, Vector};

use super::label::PieceLabel;

/// `V_{≥a} = V` for `a < start`, `levels[a − start]` for `start ≤ a < start + len`,
/// and `0` beyond. Normalized so the first level is not `V` and the last is
/// not `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filtration {
    field: FieldDesc,
    dim: usize,
    start: i32,
    levels: Vec<Subspace>,
}

impl Filtration {
    /// `levels[k]` is `V_{≥start+k}`; the chain must be decreasing.
    pub fn new(field: &FieldDesc, dim: usize, start: i32, levels: Vec<Subspace>) -> Self {
        for w in levels.windows(2) {
            assert!(w[0].contains_subspace(&w[1]), "filtration must decrease");
        }
        let mut f = Filtration {
            field: field.clone(),
            dim,
            start,
            levels,
        };
        f.normalize();
        f
    }

    /// `V_{≥0} = V`, `V_{≥1} = 0`.
    pub fn trivial(field: &FieldDesc, dim: usize) -> Self {
        Self::new(field, dim, 1, Vec::new())
    }

    fn normalize(&mut self) {
        let lead = self.levels.iter().take_while(|s| s.dim() == self.dim).count();
        self.levels.drain(..lead);
        self.start += lead as i32;
        while self.levels.last().is_some_and(|s| s.is_zero()) {
            self.levels.pop();
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ge(&self, a: i32) -> Subspace {
        if a < self.start {
            Subspace::full(&self.field, self.dim)
        } else {
            let k = (a - self.start) as usize;
            self.levels
                .get(k)
                .cloned()
                .unwrap_or_else(|| Subspace::zero(&self.field, self.dim))
        }
    }

    fn dim_ge(&self, a: i32) -> usize {
        if a < self.start {
            self.dim
        } else {
            self.levels.get((a - self.start) as usize).map_or(0, |s| s.dim())
        }
    }

    /// Range `lo..=hi` of degrees with `gr_a ≠ 0` possible.
    fn degree_range(&self) -> (i32, i32) {
        (self.start - 1, self.start + self.levels.len() as i32 - 1)
    }

    /// `a ↦ dim V_{≥a}/V_{≥a+1}`, nonzero entries only.
    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let (lo, hi) = self.degree_range();
        (lo..=hi)
            .map(|a| (a, self.dim_ge(a) - self.dim_ge(a + 1)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    /// Largest `m` with `gr_m ≠ 0`.
    pub fn top(&self) -> i32 {
        self.graded_dims().keys().copied().max().unwrap_or(0)
    }

    pub fn label(&self) -> Option<PieceLabel> {
        PieceLabel::from_graded(&self.graded_dims())
    }

    /// Self-duality `V_{≥a}^⊥ = V_{≥1−a}` and s-good graded dimensions.
    pub fn is_valid(&self, gram: &Matrix) -> bool {
        let (lo, hi) = self.degree_range();
        let (lo, hi) = (lo.min(1 - hi) - 1, hi.max(1 - lo) + 1);
        let dual = (lo..=hi).all(|a| self.ge(a).perp(gram) == self.ge(1 - a));
        dual && crate::classical::dims_ok(&self.graded_dims(), Some(true))
    }

    /// The filtration `V_{≥a} = ⊕_{i ≥ a} V_i` of a grading.
    pub fn from_grading(g: &Grading) -> Self {
        let degs = g.degrees();
        let lo = degs.iter().copied().min().unwrap_or(0);
        let hi = degs.iter().copied().max().unwrap_or(0);
        let levels = (lo..=hi + 1).map(|a| g.ge(a)).collect();
        Self::new(g.field(), g.dim(), lo, levels)
    }

    /// `base + lift(V_{≥a})` for `a ∈ lo..=hi`.
    pub(crate) fn lifted_levels(&self, base: &Subspace, lift: &dyn Fn(&Vector) -> Vector, lo: i32, hi: i32) -> Vec<Subspace> {
        (lo..=hi)
            .map(|a| {
                let lifted: Vec<Vector> = self.ge(a).basis_vectors().iter().map(lift).collect();
                base.sum(&Subspace::span(base.field(), base.ambient(), &lifted))
            })
            .collect()
    }
}

/// A basis adapted to a filtration: `vectors[k] ∈ V_{≥degrees[k]}` and the
/// vectors of degree `a` span a complement of `V_{≥a+1}` in `V_{≥a}`.
/// Degrees are nondecreasing.
#[derive(Clone, Debug)]
pub struct FiltrationFrame {
    pub degrees: Vec<i32>,
    pub basis: Matrix,
    pub inverse: Matrix,
}

impl FiltrationFrame {
    pub fn new(filt: &Filtration) -> Self {
        let f = filt.field();
        let (lo, hi) = filt.degree_range();
        let mut by_degree: Vec<(i32, Vec<Vector>)> = Vec::new();
        for a in (lo..=hi).rev() {
            let comp = filt.ge(a + 1).complement_in(&filt.ge(a));
            by_degree.push((a, comp));
        }
        by_degree.reverse();
        let mut degrees = Vec::new();
        let mut cols = Vec::new();
        for (a, vs) in by_degree {
            for v in vs {
                degrees.push(a);
                cols.push(v);
            }
        }
        Self::from_parts(f, degrees, cols)
    }

    fn from_parts(f: &FieldDesc, degrees: Vec<i32>, cols: Vec<Vector>) -> Self {
        let basis = if cols.is_empty() {
            Matrix::zeros(f, 0, 0)
        } else {
            Matrix::from_cols(f, &cols)
        };
        let inverse = basis.inverse().expect("adapted basis is a basis");
        FiltrationFrame {
            degrees,
            basis,
            inverse,
        }
    }

    /// Another adapted basis: each vector shifted by the sum of all vectors of
    /// strictly larger degree.
    pub fn shifted(&self) -> Self {
        let f = self.basis.field();
        let n = self.degrees.len();
        let cols: Vec<Vector> = (0..n)
            .map(|k| {
                let mut v = self.basis.col(k);
                for j in 0..n {
                    if self.degrees[j] > self.degrees[k] {
                        v = crate::linalg::vec_add(f, &v, &self.basis.col(j));
                    }
                }
                v
            })
            .collect();
        Self::from_parts(f, self.degrees.clone(), cols)
    }

    /// The grading of `V` by the spans of same-degree frame vectors.
    pub fn grading(&self) -> Grading {
        Grading::new(self.basis.clone(), self.degrees.clone()).expect("adapted basis is a basis")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::quadform::standard_symplectic_gram;

    #[test]
    fn trivial_is_valid() {
        let f = make_field(2, 1).unwrap();
        let g = standard_symplectic_gram(&f, 1);
        let t = Filtration::trivial(&f, 2);
        assert!(t.is_valid(&g));
        assert_eq!(t.graded_dims(), BTreeMap::from([(0, 2)]));
        assert_eq!(t.top(), 0);
    }

    #[test]
    fn grading_round_trip() {
        let f = make_field(3, 1).unwrap();
        let gram = standard_symplectic_gram(&f, 2);
        let g = Grading::coordinate(&f, vec![-1, 0, 0, 1]);
        let filt = Filtration::from_grading(&g);
        assert!(filt.is_valid(&gram));
        assert_eq!(filt.label().unwrap().half(), &[2, 1]);
        let frame = FiltrationFrame::new(&filt);
        assert_eq!(frame.degrees, vec![-1, 0, 0, 1]);
        assert_eq!(Filtration::from_grading(&frame.grading()), filt);
        assert_eq!(Filtration::from_grading(&frame.shifted().grading()), filt);
    }

    #[test]
    fn rejects_non_dual() {
        let f = make_field(2, 1).unwrap();
        let gram = standard_symplectic_gram(&f, 2);
        // e_0 in degree 1 pairs with e_3 in degree 0
        let g = Grading::coordinate(&f, vec![1, 0, -1, 0]);
        assert!(!Filtration::from_grading(&g).is_valid(&gram));
    }
}
