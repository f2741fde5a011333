use num::BigInt;

use nilcone::census::{
    borel_cross_check, count_alternating_nilpotent, count_nilpotent, fiber_census, integer_interpolant, piece_census,
    poly_fit, ratio_check, ratio_consistency, transport_census, CensusConfig, Polynomial, Target,
};
use nilcone::classical::Kind;
use nilcone::gf::make_field;
use nilcone::pieces::{admissible_sequences, rational_filtrations, ZetaTester};
use nilcone::quadform::{QuadForm, SymplecticSpace};

fn cfg() -> CensusConfig {
    CensusConfig::default()
}

#[test]
fn coadjoint_symplectic_small() {
    for (r, q) in [(1, 2), (1, 3), (1, 4), (2, 2)] {
        let rep = count_nilpotent(Kind::C, r, q, Target::Coadjoint, &cfg()).unwrap();
        assert!(rep.passed(), "{}", rep.to_table());
    }
}

#[test]
fn adjoint_counts() {
    for (kind, rank, q) in [(Kind::A, 2, 2), (Kind::A, 3, 3), (Kind::D, 2, 3), (Kind::C, 2, 2)] {
        let rep = count_nilpotent(kind, rank, q, Target::Adjoint, &cfg()).unwrap();
        assert!(rep.passed(), "{}", rep.to_table());
    }
}

#[test]
fn alternating_and_fibres() {
    assert_eq!(count_alternating_nilpotent(2, 3, &cfg()).unwrap(), 81);
    for (r, q) in [(1, 2), (2, 2), (2, 4)] {
        let rep = fiber_census(r, q, &cfg()).unwrap();
        assert!(rep.passed(), "{}", rep.to_table());
    }
    assert!(fiber_census(2, 3, &cfg()).is_err());
}

#[test]
fn transport_small() {
    for (kind, n, q) in [(Kind::A, 2, 2), (Kind::A, 2, 3), (Kind::D, 4, 2)] {
        let rep = transport_census(kind, n, q, &cfg()).unwrap();
        assert!(rep.passed(), "{}", rep.to_table());
    }
}

/// Piece census totals agree with the coadjoint counts, for every shard count.
#[test]
fn conservation_and_shards() {
    for (r, q) in [(1, 3), (2, 2)] {
        let total = count_nilpotent(Kind::C, r, q, Target::Coadjoint, &cfg()).unwrap().total;
        let mut previous = None;
        for shards in [1, 3, 8] {
            let c = CensusConfig {
                shards,
                ..CensusConfig::default()
            };
            let rep = piece_census(r, q, &c).unwrap();
            assert!(rep.passed());
            assert_eq!(rep.total, total);
            if let Some(p) = previous.replace(rep.counts.clone()) {
                assert_eq!(p, rep.counts);
            }
        }
    }
}

#[test]
fn rank_one_polynomials() {
    let qs = [2u32, 3, 4, 5, 7, 8, 9];
    let reps: Vec<_> = qs.iter().map(|&q| piece_census(1, q, &cfg()).unwrap()).collect();
    let series = |label: &str| -> Vec<(i64, BigInt)> {
        qs.iter()
            .zip(&reps)
            .map(|(&q, r)| (q as i64, BigInt::from(r.count(label).unwrap())))
            .collect()
    };
    assert_eq!(poly_fit(&series("f0=2"), 0).unwrap(), Polynomial::from_integers(&[1]));
    assert_eq!(poly_fit(&series("f-1=1 f1=1"), 2).unwrap(), Polynomial::from_integers(&[-1, 0, 1]));
}

/// `ζ(V_*)` counted inside `Q(V)_{≥2}` matches a scan of every form.
#[test]
fn ratio_zeta_counts_match_full_scan() {
    let f = make_field(2, 1).unwrap();
    let s = SymplecticSpace::standard(&f, 2);
    for label in admissible_sequences(4) {
        let ratio = ratio_check(&label, 2, &cfg()).unwrap();
        let filt = rational_filtrations(&s)
            .into_iter()
            .find(|(l, _)| *l == label)
            .unwrap()
            .1
            .into_iter()
            .find(|v| {
                let g = nilcone::pieces::standard_grading(&s, &label);
                *v == nilcone::pieces::Filtration::from_grading(&g)
            })
            .unwrap();
        let t = ZetaTester::new(&s, &filt);
        let full = QuadForm::all(&f, 4).filter(|q| t.contains(q)).count() as u64;
        assert_eq!(full, ratio.zeta, "{label}");
    }
}

#[test]
fn rank_two_ratios_and_integrality() {
    let qs = [2u32, 3, 4];
    let reps: Vec<_> = qs.iter().map(|&q| piece_census(2, q, &cfg()).unwrap()).collect();
    for label in admissible_sequences(4) {
        let name = label.to_string();
        let pts: Vec<(i64, BigInt)> = qs
            .iter()
            .zip(&reps)
            .map(|(&q, r)| (q as i64, BigInt::from(r.count(&name).unwrap())))
            .collect();
        let p = integer_interpolant(&pts).unwrap_or_else(|| panic!("{name}: {pts:?}"));
        assert!(p.degree().unwrap_or(0) <= 8);
        let (ratios, ok) = ratio_consistency(&label, &qs, &cfg()).unwrap();
        eprintln!("{name}: counts {pts:?} interpolant {p} d = {:?}", ratios.iter().map(|r| r.d).collect::<Vec<_>>());
        assert!(ok);
    }
}

#[test]
fn borel_reports() {
    let b = borel_cross_check(1, 2, &cfg()).unwrap();
    assert!(b.agrees());
    let b = borel_cross_check(2, 2, &cfg()).unwrap();
    assert_eq!((b.functionals, b.borels), (1024, 45));
    eprintln!("{}", serde_json::to_string(&b).unwrap());
}
