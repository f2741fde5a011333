//! Per-kind strategies: order formulas and rational group enumeration,
//! registered by name ("A", "C", "D").

use crate::gf::{FieldDesc, FieldElem};
use crate::linalg::{all_vectors, dot, Matrix, Subspace, Vector};
use crate::quadform::QuadForm;

use super::{build_algebra, ClassicalError, Kind, LieAlgebra};

/// Largest group order [`ClassicalFamily::enumerate_group`] will attempt.
pub const MAX_GROUP_ORDER: u128 = 1_000_000;

pub trait ClassicalFamily: Send + Sync {
    fn kind(&self) -> Kind;

    fn name(&self) -> &'static str;

    fn num_roots(&self, rank: usize) -> u64 {
        super::num_roots(self.kind(), rank).n
    }

    fn build(&self, field: &FieldDesc, rank: usize) -> Result<LieAlgebra, ClassicalError> {
        build_algebra(self.kind(), self.kind().vdim(rank), field)
    }

    /// `|G(F_q)|` for `G = GL_n`, `Sp_{2r}` or split `SO_{2r}`.
    fn group_order(&self, rank: usize, q: u128) -> u128;

    /// Whether a candidate (already preserving the forms) belongs to `G`.
    fn accept(&self, _alg: &LieAlgebra, _g: &Matrix) -> bool {
        true
    }

    fn enumerate_group(&self, alg: &LieAlgebra) -> Result<Vec<Matrix>, ClassicalError> {
        let q = alg.field().order() as u128;
        let order = self.group_order(alg.rank(), q);
        if order > MAX_GROUP_ORDER {
            return Err(ClassicalError::SizeLimitExceeded {
                order,
                limit: MAX_GROUP_ORDER,
            });
        }
        let mut out = Vec::with_capacity(order as usize);
        let mut search = ColumnSearch {
            field: alg.field().clone(),
            n: alg.vdim(),
            gram: alg.gram().cloned(),
            form: alg.ambient_form().cloned(),
        };
        search.run(&mut |g| {
            if self.accept(alg, g) {
                out.push(g.clone());
            }
        });
        Ok(out)
    }
}

fn gl_order(n: u32, q: u128) -> u128 {
    let qn = q.pow(n);
    (0..n).map(|i| qn - q.pow(i)).product()
}

struct GeneralLinear;
struct Symplectic;
struct SpecialOrthogonal;

impl ClassicalFamily for GeneralLinear {
    fn kind(&self) -> Kind {
        Kind::A
    }
    fn name(&self) -> &'static str {
        "A"
    }
    fn group_order(&self, rank: usize, q: u128) -> u128 {
        gl_order(rank as u32, q)
    }
}

impl ClassicalFamily for Symplectic {
    fn kind(&self) -> Kind {
        Kind::C
    }
    fn name(&self) -> &'static str {
        "C"
    }
    fn group_order(&self, rank: usize, q: u128) -> u128 {
        let r = rank as u32;
        q.pow(r * r) * (1..=r).map(|i| q.pow(2 * i) - 1).product::<u128>()
    }
}

impl ClassicalFamily for SpecialOrthogonal {
    fn kind(&self) -> Kind {
        Kind::D
    }
    fn name(&self) -> &'static str {
        "D"
    }
    fn group_order(&self, rank: usize, q: u128) -> u128 {
        let r = rank as u32;
        q.pow(r * (r - 1)) * (q.pow(r) - 1) * (1..r).map(|i| q.pow(2 * i) - 1).product::<u128>()
    }
    fn accept(&self, alg: &LieAlgebra, g: &Matrix) -> bool {
        let f = alg.field();
        if f.characteristic() == 2 {
            dickson_invariant(g) == 0
        } else {
            determinant(g) == f.one()
        }
    }
}

/// `rank(g − 1) mod 2`; the Dickson invariant of an orthogonal transformation in characteristic 2.
pub fn dickson_invariant(g: &Matrix) -> usize {
    let id = Matrix::identity(g.field(), g.rows());
    g.sub(&id).rank() % 2
}

pub fn determinant(m: &Matrix) -> FieldElem {
    let f = m.field().clone();
    let n = m.rows();
    let mut a = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return FieldElem::ZERO;
        };
        if p != c {
            for j in 0..n {
                let (x, y) = (a.get(p, j), a.get(c, j));
                a.set(p, j, y);
                a.set(c, j, x);
            }
            det = f.neg(det);
        }
        let pivot = a.get(c, c);
        det = f.mul(det, pivot);
        let inv = f.inv(pivot).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = f.mul(a.get(i, c), inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

static FAMILIES: [&dyn ClassicalFamily; 3] = [&GeneralLinear, &Symplectic, &SpecialOrthogonal];

pub fn registered_families() -> &'static [&'static dyn ClassicalFamily] {
    &FAMILIES
}

pub fn family(name: &str) -> Option<&'static dyn ClassicalFamily> {
    FAMILIES.iter().copied().find(|f| f.name().eq_ignore_ascii_case(name))
}

pub fn family_for(kind: Kind) -> &'static dyn ClassicalFamily {
    FAMILIES
        .iter()
        .copied()
        .find(|f| f.kind() == kind)
        .expect("every kind is registered")
}

/// Backtracking over the columns `g e_0, g e_1, …` of an invertible matrix
/// preserving an optional bilinear Gram and an optional quadratic form.
struct ColumnSearch {
    field: FieldDesc,
    n: usize,
    gram: Option<Matrix>,
    form: Option<QuadForm>,
}

impl ColumnSearch {
    fn run(&mut self, emit: &mut dyn FnMut(&Matrix)) {
        let mut cols: Vec<Vector> = Vec::with_capacity(self.n);
        self.step(&mut cols, emit);
    }

    fn candidates(&self, cols: &[Vector]) -> Vec<Vector> {
        let f = &self.field;
        let n = self.n;
        let k = cols.len();
        let Some(gram) = &self.gram else {
            return all_vectors(f, n).collect();
        };
        if k == 0 {
            return all_vectors(f, n).collect();
        }
        // (c_i, v) = G_{ik} for i < k
        let rows: Vec<Vector> = cols
            .iter()
            .map(|c| gram.transpose().mul_vec(c))
            .collect();
        let m = Matrix::from_rows_with_cols(f, &rows, n);
        let rhs: Vector = (0..k).map(|i| gram.get(i, k)).collect();
        let Some(x0) = m.solve(&rhs) else {
            return Vec::new();
        };
        m.kernel()
            .elements()
            .into_iter()
            .map(|z| crate::linalg::vec_add(f, &x0, &z))
            .collect()
    }

    fn step(&mut self, cols: &mut Vec<Vector>, emit: &mut dyn FnMut(&Matrix)) {
        let n = self.n;
        let k = cols.len();
        if k == n {
            emit(&Matrix::from_cols(&self.field, cols));
            return;
        }
        let span = Subspace::span(&self.field, n, cols);
        let target_q = self.form.as_ref().map(|q| q.eval(&crate::linalg::unit_vector(n, k)));
        for v in self.candidates(cols) {
            if span.contains(&v) {
                continue;
            }
            if let (Some(q), Some(t)) = (&self.form, target_q) {
                if q.eval(&v) != t {
                    continue;
                }
            }
            if let Some(gram) = &self.gram {
                // diagonal entry; automatic for alternating forms
                if dot(&self.field, &v, &gram.mul_vec(&v)) != gram.get(k, k) {
                    continue;
                }
            }
            cols.push(v);
            self.step(cols, emit);
            cols.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn small_group_orders() {
        let f2 = make_field(2, 1).unwrap();
        let sp2 = build_algebra(Kind::C, 2, &f2).unwrap();
        assert_eq!(sp2.enumerate_group().unwrap().len(), 6);
        let gl2 = build_algebra(Kind::A, 2, &f2).unwrap();
        assert_eq!(gl2.enumerate_group().unwrap().len(), 6);
        let so4 = build_algebra(Kind::D, 4, &f2).unwrap();
        assert_eq!(so4.enumerate_group().unwrap().len(), 36);
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(family("c").unwrap().kind(), Kind::C);
        assert!(family("B").is_none());
        assert_eq!(registered_families().len(), 3);
    }

    #[test]
    fn determinant_small() {
        let f = make_field(5, 1).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 2], &[3, 4]]);
        assert_eq!(determinant(&m), f.from_int(-2));
    }
}
