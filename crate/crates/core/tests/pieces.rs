use nilcone::gf::make_field;
use nilcone::linalg::Subspace;
use nilcone::pieces::{
    admissible_sequences, classify, ef_invariants, graded_form, induced_form, rational_filtrations, rational_gradings, stabilizer,
    stabilizer_subordinate, standard_grading, symplectic_group, verify_witness, witness, PiecesError, ZetaTester,
};
use nilcone::quadform::{QuadForm, SymplecticSpace};

fn nilpotent_forms(s: &SymplecticSpace) -> Vec<QuadForm> {
    QuadForm::all(s.field(), s.dim())
        .filter(|q| s.polarize(q).is_nilpotent())
        .collect()
}

#[test]
fn filtration_counts() {
    for (p, r, expected) in [(2, 1, 4), (2, 2, 76), (3, 2, 241)] {
        let f = make_field(p, 1).unwrap();
        let s = SymplecticSpace::standard(&f, r);
        let filts = rational_filtrations(&s);
        let total: usize = filts.iter().map(|(_, v)| v.len()).sum();
        assert_eq!(total, expected, "p={p} r={r}");
        for (label, v) in &filts {
            for filt in v {
                assert!(filt.is_valid(s.gram()));
                assert_eq!(&filt.label().unwrap(), label);
            }
        }
    }
}

#[test]
fn grading_counts() {
    let f = make_field(2, 1).unwrap();
    for (r, expected) in [(1, 7), (2, 961)] {
        let s = SymplecticSpace::standard(&f, r);
        let group = symplectic_group(&s).unwrap();
        let total: usize = rational_gradings(&s, &group).iter().map(|(_, v)| v.len()).sum();
        assert_eq!(total, expected, "r={r}");
    }
}

/// Every nilpotent form lies in exactly one `ζ(V_*)`, the one `classify` finds.
#[test]
fn unique_piece_per_form() {
    for (p, r) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let f = make_field(p, 1).unwrap();
        let s = SymplecticSpace::standard(&f, r);
        let testers: Vec<_> = rational_filtrations(&s)
            .into_iter()
            .flat_map(|(_, v)| v)
            .map(|filt| (ZetaTester::new(&s, &filt), filt))
            .collect();
        let forms = nilpotent_forms(&s);
        assert_eq!(forms.len() as u64, (p as u64).pow(2 * (r * r) as u32));
        for q in &forms {
            let hits: Vec<_> = testers.iter().filter(|(t, _)| t.contains(q)).collect();
            assert_eq!(hits.len(), 1, "p={p} r={r} {q:?}");
            let c = classify(&s, q).unwrap();
            assert_eq!(c.filtration, hits[0].1);
            assert!(induced_form(&s, q, &c.filtration).is_ok());
        }
    }
}

#[test]
fn ef_invariants_match_classification() {
    let f = make_field(2, 1).unwrap();
    for r in 1..=2 {
        let s = SymplecticSpace::standard(&f, r);
        for q in nilpotent_forms(&s) {
            let inv = ef_invariants(&s, &q).unwrap();
            assert!(inv.e <= 2 * inv.f + 1);
            let c = classify(&s, &q).unwrap();
            let m = c.filtration.top();
            if q.is_zero() {
                continue;
            }
            assert_eq!(m, inv.m);
            assert_eq!(c.filtration.ge(-m + 1), inv.h);
        }
    }
}

#[test]
fn witnesses_and_stabilizers() {
    let f = make_field(2, 1).unwrap();
    for r in 1..=2 {
        let s = SymplecticSpace::standard(&f, r);
        let group = symplectic_group(&s).unwrap();
        let gradings: Vec<_> = rational_gradings(&s, &group).into_iter().flat_map(|(_, v)| v).collect();
        let mut paths = std::collections::BTreeSet::new();
        let mut witnessed = 0;
        let mut stabilized = 0;
        for q in QuadForm::all(&f, s.dim()) {
            let mut stab = None;
            for g in &gradings {
                let m = graded_form(&s, &q, g).unwrap().membership();
                if !m.in_q2 {
                    continue;
                }
                if m.in_q2_0 {
                    let stab = stab.get_or_insert_with(|| stabilizer(&q, &group));
                    assert!(stabilizer_subordinate(&s, g, stab).unwrap());
                    stabilized += 1;
                } else {
                    let stab = stab.get_or_insert_with(|| stabilizer(&q, &group));
                    assert!(!stabilizer_subordinate(&s, g, stab).unwrap());
                    let w = witness(&s, &q, g, None).unwrap();
                    assert!(verify_witness(&s, &q, g, &w.b));
                    paths.insert(w.path);
                    witnessed += 1;
                }
            }
        }
        assert!(witnessed > 0 && stabilized > 0);
        eprintln!("r={r}: {witnessed} witnesses via {paths:?}, {stabilized} stabilizer checks");
        if r == 2 {
            // an even-degree kernel of dimension 2 needs rank ≥ 3
            assert_eq!(paths.into_iter().collect::<Vec<_>>(), ["non-injective", "odd-degenerate"]);
        }
    }
}

/// All of `Q(V)_2` for the standard gradings at ranks 3 and 4 with few
/// enough forms: in graded coordinates these are the forms supported on
/// monomials of total degree −2.
#[test]
fn witnesses_at_higher_rank() {
    let mut paths = std::collections::BTreeSet::new();
    for (k, r) in [(1, 3), (2, 3), (1, 4)] {
        let f = make_field(2, k).unwrap();
        let s = SymplecticSpace::standard(&f, r);
        let n = 2 * r;
        for label in admissible_sequences(n) {
            let g = standard_grading(&s, &label);
            let deg = g.degrees().to_vec();
            let monomials: Vec<(usize, usize)> = (0..n)
                .flat_map(|j| (j..n).map(move |k| (j, k)))
                .filter(|&(j, k)| deg[j] + deg[k] == -2)
                .collect();
            let q_order = f.order() as u64;
            let total = q_order.pow(monomials.len() as u32);
            if total > 1 << 14 {
                continue;
            }
            for idx in 0..total {
                let mut q = QuadForm::zero(&f, n);
                let mut rest = idx;
                for &(j, k) in &monomials {
                    q.set_coeff(j, k, f.elem((rest % q_order) as u32).unwrap());
                    rest /= q_order;
                }
                let m = graded_form(&s, &q, &g).unwrap().membership();
                assert!(m.in_q2);
                if !m.in_q2_0 {
                    let w = witness(&s, &q, &g, None).unwrap();
                    assert!(verify_witness(&s, &q, &g, &w.b));
                    paths.insert(w.path);
                }
            }
        }
    }
    assert_eq!(paths.len(), 3, "{paths:?}");
}

#[test]
fn witness_preconditions() {
    let f = make_field(2, 1).unwrap();
    let s = SymplecticSpace::standard(&f, 1);
    let g = nilcone::classical::Grading::coordinate(&f, vec![-1, 1]);
    let xy = QuadForm::from_ints(&f, 2, &[0, 1, 0]);
    assert_eq!(witness(&s, &xy, &g, None).unwrap_err(), PiecesError::NotInQ2);
    let f3 = make_field(3, 1).unwrap();
    let s3 = SymplecticSpace::standard(&f3, 1);
    let g3 = nilcone::classical::Grading::coordinate(&f3, vec![-1, 1]);
    assert_eq!(
        witness(&s3, &QuadForm::zero(&f3, 2), &g3, None).unwrap_err(),
        PiecesError::OddCharacteristic
    );
}

#[test]
fn zero_form_is_in_the_trivial_piece() {
    let f = make_field(2, 1).unwrap();
    let s = SymplecticSpace::standard(&f, 2);
    let c = classify(&s, &QuadForm::zero(&f, 4)).unwrap();
    assert_eq!(c.label.to_string(), "f0=4");
    assert_eq!(c.filtration.ge(1), Subspace::zero(&f, 4));
}
