use num::BigInt;
use proptest::prelude::*;

use nilcone::census::{poly_fit, tally, LinearEnumeration, Polynomial};
use nilcone::classical::{DualFunctional, Grading};
use nilcone::forms::{polarize, Sigma};
use nilcone::gf::{field_of_order, FieldDesc, FieldElem};
use nilcone::linalg::{annihilator, Matrix, Subspace, Vector};
use nilcone::pieces::{Filtration, FiltrationFrame};
use nilcone::quadform::{form_dim, QuadForm, SymplecticSpace};

fn field(q: u32) -> FieldDesc {
    field_of_order(q as u64).unwrap()
}

fn elems(f: &FieldDesc, raw: &[u32]) -> Vector {
    raw.iter().map(|&x| f.elem(x % f.order()).unwrap()).collect()
}

fn matrix(f: &FieldDesc, rows: usize, cols: usize, raw: &[u32]) -> Matrix {
    let v = elems(f, raw);
    let rows: Vec<Vector> = v.chunks(cols).take(rows).map(|c| c.to_vec()).collect();
    Matrix::from_rows_with_cols(f, &rows, cols)
}

fn raw(len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..64, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_annihilator_is_identity(q in prop::sample::select(vec![2u32, 3, 4, 5]), n in 1usize..=6, k in 0usize..=6, r in raw(36)) {
        let f = field(q);
        let k = k.min(n);
        let gens: Vec<Vector> = elems(&f, &r).chunks(6).take(k).map(|c| c[..n].to_vec()).collect();
        let u = Subspace::span(&f, n, &gens);
        let ann = annihilator(&u);
        prop_assert_eq!(ann.dim() + u.dim(), n);
        prop_assert_eq!(annihilator(&ann), u);
    }

    /// The span does not depend on which generators are given.
    #[test]
    fn span_is_canonical(q in prop::sample::select(vec![2u32, 3, 4]), n in 1usize..=5, r in raw(25), mix in raw(25)) {
        let f = field(q);
        let gens: Vec<Vector> = elems(&f, &r).chunks(5).map(|c| c[..n].to_vec()).collect();
        let coeffs = elems(&f, &mix);
        let combos: Vec<Vector> = coeffs
            .chunks(5)
            .map(|c| {
                let mut v = vec![FieldElem::ZERO; n];
                for (g, &a) in gens.iter().zip(c) {
                    v = nilcone::linalg::vec_axpy(&f, &v, a, g);
                }
                v
            })
            .collect();
        let u = Subspace::span(&f, n, &gens);
        let mut both = gens.clone();
        both.extend(combos.iter().cloned());
        prop_assert_eq!(Subspace::span(&f, n, &both), u.clone());
        let mut reversed = gens.clone();
        reversed.reverse();
        prop_assert_eq!(Subspace::span(&f, n, &reversed), u);
    }

    /// The bit-packed elimination agrees with the generic one over `F_2`.
    #[test]
    fn bit_path_matches_generic(rows in 1usize..=9, cols in 1usize..=9, r in raw(81)) {
        let f = field(2);
        let m = matrix(&f, rows, cols, &r);
        let (fast, p_fast) = m.rref();
        let (slow, p_slow) = m.rref_generic();
        prop_assert_eq!(fast, slow);
        prop_assert_eq!(p_fast, p_slow);
        let ker = m.kernel();
        prop_assert_eq!(ker.dim() + m.rank(), cols);
        for v in ker.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
        if rows == cols {
            prop_assert_eq!(m.is_nilpotent(), m.pow(rows as u32).is_zero());
        }
    }

    #[test]
    fn inverse_is_two_sided(q in prop::sample::select(vec![2u32, 3, 4, 7]), n in 1usize..=5, r in raw(25)) {
        let f = field(q);
        let m = matrix(&f, n, n, &r);
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(&f, n));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(&f, n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn polarization_is_additive(q in prop::sample::select(vec![2u32, 3, 4]), rank in 1usize..=3, a in raw(21), b in raw(21)) {
        let f = field(q);
        let s = SymplecticSpace::standard(&f, rank);
        let n = 2 * rank;
        let qa = QuadForm::from_coeffs(&f, n, elems(&f, &a[..form_dim(n)]));
        let qb = QuadForm::from_coeffs(&f, n, elems(&f, &b[..form_dim(n)]));
        prop_assert_eq!(polarize(&s, &qa.add(&qb)), polarize(&s, &qa).add(&polarize(&s, &qb)));
    }

    #[test]
    fn sigma_round_trip(q in prop::sample::select(vec![2u32, 3, 4, 5]), rank in 1usize..=2, r in raw(10)) {
        let f = field(q);
        let sigma = Sigma::new(&f, rank);
        let dim = sigma.algebra().dim();
        let xi = DualFunctional { coeffs: elems(&f, &r[..dim]) };
        let form = sigma.to_form(&xi);
        prop_assert_eq!(&sigma.to_form_fast(&xi), &form);
        prop_assert_eq!(sigma.from_form(&form), xi);
    }

    /// Tallies do not depend on the number of shards.
    #[test]
    fn tally_is_shard_independent(q in prop::sample::select(vec![2u32, 3, 4]), dim in 1usize..=5, shards in 1usize..=17) {
        let f = field(q);
        let en = LinearEnumeration::coordinates(&f, dim);
        let key = |c: &[FieldElem], _: &[FieldElem]| Some(c.iter().filter(|x| x.is_zero()).count());
        let one = tally(&en, 1, key);
        let many = tally(&en, shards, key);
        prop_assert_eq!(one.values().sum::<u64>(), en.len());
        prop_assert_eq!(one, many);
    }

    #[test]
    fn frame_recovers_filtration(q in prop::sample::select(vec![2u32, 3]), deg in prop::collection::vec(-3i32..=3, 1..=5), r in raw(25)) {
        let f = field(q);
        let n = deg.len();
        let mut basis = matrix(&f, n, n, &r);
        if !basis.is_invertible() {
            basis = Matrix::identity(&f, n);
        }
        let g = Grading::new(basis, deg).unwrap();
        let filt = Filtration::from_grading(&g);
        let frame = FiltrationFrame::new(&filt);
        prop_assert_eq!(Filtration::from_grading(&frame.grading()), filt.clone());
        prop_assert_eq!(Filtration::from_grading(&frame.shifted().grading()), filt);
    }

    #[test]
    fn fit_recovers_integer_polynomials(coeffs in prop::collection::vec(-50i64..=50, 1..=6), extra in 0usize..=3) {
        let p = Polynomial::from_integers(&coeffs);
        let bound = coeffs.len() - 1;
        let xs: Vec<i64> = (0..coeffs.len() + extra).map(|i| 2 + i as i64).collect();
        let pts: Vec<(i64, BigInt)> = xs
            .iter()
            .map(|&x| {
                let y = coeffs.iter().rev().fold(BigInt::from(0), |acc, &c| acc * x + c);
                (x, y)
            })
            .collect();
        prop_assert_eq!(poly_fit(&pts, bound).unwrap(), p);
    }
}
