use nilcone::forms::{fiber_count, good_basis, is_alternating, polarize, verify_good_basis, Sigma};
use nilcone::gf::make_field;
use nilcone::linalg::{all_vectors, Matrix};
use nilcone::classical::unflatten;
use nilcone::quadform::{QuadForm, SymplecticSpace};

#[test]
fn good_basis_exhaustive_rank2() {
    for p in [2, 3] {
        let f = make_field(p, 1).unwrap();
        let s = SymplecticSpace::standard(&f, 2);
        let mut nilpotent = 0;
        for q in QuadForm::all(&f, 4) {
            if !polarize(&s, &q).is_nilpotent() {
                continue;
            }
            nilpotent += 1;
            let gb = good_basis(&s, &q).unwrap_or_else(|e| panic!("{q:?}: {e}"));
            verify_good_basis(&s, &q, &gb).unwrap_or_else(|e| panic!("{q:?}: {e}"));
        }
        let qq = p as usize;
        assert_eq!(nilpotent, qq.pow(8), "p = {p}");
    }
}

#[test]
fn good_basis_over_f4() {
    let f = make_field(2, 2).unwrap();
    let s = SymplecticSpace::standard(&f, 1);
    for q in QuadForm::all(&f, 2) {
        if polarize(&s, &q).is_nilpotent() {
            let gb = good_basis(&s, &q).unwrap();
            assert_eq!(gb.extension_degree(), 1);
            verify_good_basis(&s, &q, &gb).unwrap();
        }
    }
}

#[test]
fn polarize_is_linear_r1_f2() {
    let f = make_field(2, 1).unwrap();
    let s = SymplecticSpace::standard(&f, 1);
    for a in QuadForm::all(&f, 2) {
        for b in QuadForm::all(&f, 2) {
            assert_eq!(polarize(&s, &a.add(&b)), polarize(&s, &a).add(&polarize(&s, &b)));
        }
    }
}

#[test]
fn polarization_kernel_is_diagonal_forms() {
    let f = make_field(2, 1).unwrap();
    for r in 1..=2 {
        let s = SymplecticSpace::standard(&f, r);
        let n = 2 * r;
        let mut kernel = 0;
        for q in QuadForm::all(&f, n) {
            let a = polarize(&s, &q);
            let diagonal = (0..n).all(|i| (i + 1..n).all(|j| q.coeff(i, j).is_zero()));
            assert_eq!(a.is_zero(), diagonal);
            if a.is_zero() {
                kernel += 1;
            }
            // alternating operators have even rank, so even-dimensional kernel
            assert_eq!(a.kernel().dim() % 2, 0);
        }
        assert_eq!(kernel, 1 << n);
    }
}

#[test]
fn fibers_of_alternating_operators() {
    let f = make_field(2, 1).unwrap();
    for r in 1..=2 {
        let s = SymplecticSpace::standard(&f, r);
        let n = 2 * r;
        let mut alternating = 0;
        for v in all_vectors(&f, n * n) {
            let a: Matrix = unflatten(&f, n, &v);
            if is_alternating(&s, &a) {
                alternating += 1;
                assert_eq!(fiber_count(&s, &a).unwrap(), 1 << n);
            }
        }
        // alternating forms on F^n: 2^{n(n-1)/2}
        assert_eq!(alternating, 1 << (n * (n - 1) / 2));
    }
}

#[test]
fn sigma_bijective() {
    for (p, r) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = make_field(p, 1).unwrap();
        let sg = Sigma::new(&f, r);
        assert!(sg.to_form_matrix().is_invertible());
        assert_eq!(sg.to_form_matrix().mul(sg.from_form_matrix()), Matrix::identity(&f, r * (2 * r + 1)));
    }
}
