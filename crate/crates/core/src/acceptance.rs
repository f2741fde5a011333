//! The acceptance suite: one exhaustive or seeded check per criterion, each
//! reporting a single pass/fail line.

use std::time::Instant;

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::census::{
    alternating_operators, count_alternating_nilpotent, count_nilpotent, fiber_census, integer_interpolant,
    piece_census, poly_fit, qpow, ratio_consistency, transport_census, CensusConfig, LinearEnumeration, Polynomial,
    Target,
};
use crate::classical::{unflatten, DualFunctional, Kind};
use crate::forms::{fiber_count, good_basis, verify_good_basis, Sigma};
use crate::gf::{make_field, FieldDesc, FieldElem};
use crate::linalg::{all_vectors, Matrix};
use crate::pieces::{
    admissible_sequences, classify, ef_invariants, graded_form, rational_filtrations, rational_gradings, stabilizer,
    stabilizer_subordinate, symplectic_group, verify_witness, witness, Filtration, ZetaTester,
};
use crate::quadform::{form_dim, QuadForm, SymplecticSpace};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

pub trait Criterion: Send + Sync {
    fn id(&self) -> &'static str;
    fn title(&self) -> &'static str;
    /// The pinned tolerance, e.g. `exact` or a time limit.
    fn tolerance(&self) -> &'static str;
    fn run(&self, cfg: &CensusConfig) -> Outcome;
}

type Check = fn(&CensusConfig) -> Result<String, String>;

struct Suite {
    id: &'static str,
    title: &'static str,
    tolerance: &'static str,
    check: Check,
}

impl Criterion for Suite {
    fn id(&self) -> &'static str {
        self.id
    }

    fn title(&self) -> &'static str {
        self.title
    }

    fn tolerance(&self) -> &'static str {
        self.tolerance
    }

    fn run(&self, cfg: &CensusConfig) -> Outcome {
        match (self.check)(cfg) {
            Ok(detail) => Outcome { passed: true, detail },
            Err(detail) => Outcome { passed: false, detail },
        }
    }
}

static CRITERIA: [Suite; 11] = [
    Suite {
        id: "AC1",
        title: "coadjoint symplectic counts q^(2r^2)",
        tolerance: "exact; each case < 60 s",
        check: coadjoint_counts,
    },
    Suite {
        id: "AC2",
        title: "adjoint and alternating nilpotent counts",
        tolerance: "exact; each case < 10 s",
        check: adjoint_counts,
    },
    Suite {
        id: "AC3",
        title: "transport of nilpotents for types A and D",
        tolerance: "exact",
        check: transport,
    },
    Suite {
        id: "AC4",
        title: "polarization fibres have q^(2r) forms",
        tolerance: "exact",
        check: fibres,
    },
    Suite {
        id: "AC5",
        title: "each nilpotent form lies in exactly one piece",
        tolerance: "exact",
        check: bijection,
    },
    Suite {
        id: "AC6",
        title: "invariants e, f, H_Q, m",
        tolerance: "exact",
        check: invariants,
    },
    Suite {
        id: "AC7",
        title: "witnesses outside Q(V)_2^0",
        tolerance: "exact",
        check: witnesses,
    },
    Suite {
        id: "AC8",
        title: "stabilizers inside G_{>=0} on Q(V)_2^0",
        tolerance: "exact",
        check: stabilizers,
    },
    Suite {
        id: "AC9",
        title: "good bases for every nilpotent form",
        tolerance: "exact",
        check: good_bases,
    },
    Suite {
        id: "AC10",
        title: "piece counts are polynomial in q",
        tolerance: "zero residual",
        check: polynomiality,
    },
    Suite {
        id: "AC11",
        title: "sigma is a linear equivariant bijection",
        tolerance: "exact; 1000 seeded samples at r = 2",
        check: sigma_suite,
    },
];

pub fn criteria() -> Vec<&'static dyn Criterion> {
    CRITERIA.iter().map(|c| c as &dyn Criterion).collect()
}

pub fn criterion(id: &str) -> Option<&'static dyn Criterion> {
    CRITERIA
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .map(|c| c as &dyn Criterion)
}

/// `AC1 PASS coadjoint ... [exact] detail`
pub fn format_line(c: &dyn Criterion, o: &Outcome) -> String {
    format!(
        "{:<4} {} {} [{}] {}",
        c.id(),
        if o.passed { "PASS" } else { "FAIL" },
        c.title(),
        c.tolerance(),
        o.detail
    )
}

fn field(p: u32) -> FieldDesc {
    make_field(p, 1).expect("prime")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(cfg: &CensusConfig) -> CensusConfig {
    CensusConfig {
        timing: true,
        ..cfg.clone()
    }
}

fn coadjoint_counts(cfg: &CensusConfig) -> Result<String, String> {
    let cases = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2)];
    let mut slowest = (0, 0, 0);
    for (r, q) in cases {
        let rep = count_nilpotent(Kind::C, r, q, Target::Coadjoint, &timed(cfg)).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("r={r} q={q}: {} != {:?}", rep.total, rep.expected))?;
        ensure(rep.elapsed_ms < 60_000, || format!("r={r} q={q} took {} ms", rep.elapsed_ms))?;
        if rep.elapsed_ms >= slowest.2 {
            slowest = (r, q, rep.elapsed_ms);
        }
    }
    Ok(format!(
        "{} cases exact; slowest r={} q={} in {} ms",
        cases.len(),
        slowest.0,
        slowest.1,
        slowest.2
    ))
}

fn adjoint_counts(cfg: &CensusConfig) -> Result<String, String> {
    let cases = [
        (Kind::A, 2, 2),
        (Kind::A, 2, 3),
        (Kind::A, 3, 2),
        (Kind::A, 3, 3),
        (Kind::D, 2, 2),
        (Kind::D, 2, 3),
    ];
    for (kind, rank, q) in cases {
        let rep = count_nilpotent(kind, rank, q, Target::Adjoint, &timed(cfg)).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || {
            format!("{kind} rank={rank} q={q}: {} != {:?}", rep.total, rep.expected)
        })?;
        ensure(rep.elapsed_ms < 10_000, || {
            format!("{kind} rank={rank} q={q} took {} ms", rep.elapsed_ms)
        })?;
    }
    for q in [2, 3] {
        let t = Instant::now();
        let n = count_alternating_nilpotent(2, q, cfg).map_err(|e| e.to_string())?;
        ensure(n == qpow(q, 4), || format!("alternating r=2 q={q}: {n} != {}", qpow(q, 4)))?;
        ensure(t.elapsed().as_secs() < 10, || format!("alternating r=2 q={q} too slow"))?;
    }
    Ok(format!("{} adjoint cases and 2 alternating cases exact", cases.len()))
}

fn transport(cfg: &CensusConfig) -> Result<String, String> {
    let cases = [(Kind::A, 2, 2), (Kind::A, 2, 3), (Kind::D, 4, 2)];
    let mut totals = Vec::new();
    for (kind, n, q) in cases {
        let rep = transport_census(kind, n, q, cfg).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || rep.to_table())?;
        totals.push(format!("{kind}{n}/F{q}: {}", rep.total));
    }
    Ok(totals.join(", "))
}

fn fibres(cfg: &CensusConfig) -> Result<String, String> {
    let f = field(2);
    let mut checked = 0;
    for r in 1..=2 {
        let space = SymplecticSpace::standard(&f, r);
        let n = 2 * r;
        let en = LinearEnumeration::new(&alternating_operators(&space));
        let mut bad = None;
        en.for_each_in(0, en.len(), |_, a| {
            let a = unflatten(&f, n, a);
            let c = fiber_count(&space, &a).ok();
            if c != Some(qpow(2, n as u64) as u128) && bad.is_none() {
                bad = Some(format!("r={r}: fibre {c:?} over {a:?}"));
            }
            checked += 1;
        });
        if let Some(b) = bad {
            return Err(b);
        }
        let rep = fiber_census(r, 2, cfg).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || rep.to_table())?;
    }
    Ok(format!("{checked} alternating operators"))
}

/// `Σ_{V_*} |ζ(V_*)|`, enumerating for each filtration the forms of
/// `Q(V)_{≥2}`: in the adapted basis, the monomials of total degree `≤ −2`.
fn zeta_total(space: &SymplecticSpace, testers: &[(ZetaTester, Filtration)]) -> u64 {
    let f = space.field();
    let n = space.dim();
    testers
        .par_iter()
        .map(|(t, _)| {
            let deg = &t.frame().degrees;
            let slots: Vec<usize> = (0..n)
                .flat_map(|j| (j..n).map(move |k| (j, k)))
                .enumerate()
                .filter(|(_, (j, k))| deg[*j] + deg[*k] <= -2)
                .map(|(s, _)| s)
                .collect();
            let en = LinearEnumeration::coordinates(f, slots.len());
            let mut count = 0;
            en.for_each_in(0, en.len(), |c, _| {
                let mut coeffs = vec![FieldElem::ZERO; form_dim(n)];
                for (&s, &v) in slots.iter().zip(c) {
                    coeffs[s] = v;
                }
                let q = QuadForm::from_coeffs(f, n, coeffs).compose(&t.frame().inverse);
                if t.contains(&q) {
                    count += 1;
                }
            });
            count
        })
        .sum()
}

fn nilpotent_forms(space: &SymplecticSpace) -> Vec<QuadForm> {
    QuadForm::all(space.field(), space.dim())
        .filter(|q| space.polarize(q).is_nilpotent())
        .collect()
}

fn bijection(_: &CensusConfig) -> Result<String, String> {
    let mut detail = Vec::new();
    for (p, r) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let f = field(p);
        let space = SymplecticSpace::standard(&f, r);
        let testers: Vec<(ZetaTester, Filtration)> = rational_filtrations(&space)
            .into_iter()
            .flat_map(|(_, v)| v)
            .map(|filt| (ZetaTester::new(&space, &filt), filt))
            .collect();
        let forms = nilpotent_forms(&space);
        let bad = forms.par_iter().find_any(|q| {
            let hits: Vec<_> = testers.iter().filter(|(t, _)| t.contains(q)).collect();
            hits.len() != 1 || classify(&space, q).map(|c| c.filtration).ok().as_ref() != Some(&hits[0].1)
        });
        if let Some(q) = bad {
            return Err(format!("p={p} r={r}: {q:?} is not in exactly one piece or is misclassified"));
        }
        let total = zeta_total(&space, &testers);
        let expected = qpow(p, 2 * (r * r) as u64);
        ensure(total == expected, || format!("p={p} r={r}: Σ|ζ| = {total} != {expected}"))?;
        detail.push(format!("F{p} r={r}: {} filtrations, Σ|ζ| = {total}", testers.len()));
    }
    Ok(detail.join("; "))
}

fn invariants(_: &CensusConfig) -> Result<String, String> {
    let f = field(2);
    let mut checked = 0;
    for r in 1..=2 {
        let space = SymplecticSpace::standard(&f, r);
        for q in nilpotent_forms(&space) {
            let inv = ef_invariants(&space, &q).map_err(|e| e.to_string())?;
            ensure(inv.e <= 2 * inv.f + 1, || format!("{q:?}: e = {} > 2f + 1", inv.e))?;
            let c = classify(&space, &q).map_err(|e| e.to_string())?;
            if !q.is_zero() {
                let m = c.filtration.top();
                ensure(m == inv.m, || format!("{q:?}: top degree {m} != m = {}", inv.m))?;
                ensure(c.filtration.ge(-m + 1) == inv.h, || format!("{q:?}: H_Q != V_(>=-m+1)"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} nilpotent forms"))
}

fn witnesses(_: &CensusConfig) -> Result<String, String> {
    let f = field(2);
    let mut count = 0;
    for r in 1..=2 {
        let space = SymplecticSpace::standard(&f, r);
        let group = symplectic_group(&space).map_err(|e| e.to_string())?;
        let gradings: Vec<_> = rational_gradings(&space, &group).into_iter().flat_map(|(_, v)| v).collect();
        let forms: Vec<QuadForm> = QuadForm::all(&f, space.dim()).collect();
        let results: Vec<Result<usize, String>> = forms
            .par_iter()
            .map(|q| {
                let mut n = 0;
                for g in &gradings {
                    let m = graded_form(&space, q, g).map_err(|e| e.to_string())?.membership();
                    if m.in_q2 && !m.in_q2_0 {
                        let w = witness(&space, q, g, None).map_err(|e| format!("{q:?}: {e}"))?;
                        if !verify_witness(&space, q, g, &w.b) {
                            return Err(format!("{q:?}: witness fails"));
                        }
                        n += 1;
                    }
                }
                Ok(n)
            })
            .collect();
        for res in results {
            count += res?;
        }
    }
    Ok(format!("{count} (form, grading) pairs"))
}

fn stabilizers(_: &CensusConfig) -> Result<String, String> {
    let f = field(2);
    let mut count = 0;
    for r in 1..=2 {
        let space = SymplecticSpace::standard(&f, r);
        let group = symplectic_group(&space).map_err(|e| e.to_string())?;
        let gradings: Vec<_> = rational_gradings(&space, &group).into_iter().flat_map(|(_, v)| v).collect();
        let forms: Vec<QuadForm> = QuadForm::all(&f, space.dim()).collect();
        let results: Vec<Result<usize, String>> = forms
            .par_iter()
            .map(|q| {
                let mut stab: Option<Vec<Matrix>> = None;
                let mut n = 0;
                for g in &gradings {
                    if !graded_form(&space, q, g).map_err(|e| e.to_string())?.membership().in_q2_0 {
                        continue;
                    }
                    let stab = stab.get_or_insert_with(|| stabilizer(q, &group));
                    if !stabilizer_subordinate(&space, g, stab).map_err(|e| e.to_string())? {
                        return Err(format!("{q:?}: stabilizer leaves G_(>=0)"));
                    }
                    n += 1;
                }
                Ok(n)
            })
            .collect();
        for res in results {
            count += res?;
        }
    }
    Ok(format!("{count} (form, grading) pairs"))
}

fn good_bases(_: &CensusConfig) -> Result<String, String> {
    let mut count = 0;
    let mut extended = 0;
    for (p, r) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let space = SymplecticSpace::standard(&field(p), r);
        for q in nilpotent_forms(&space) {
            let gb = good_basis(&space, &q).map_err(|e| format!("{q:?}: {e}"))?;
            verify_good_basis(&space, &q, &gb).map_err(|e| format!("{q:?}: {e}"))?;
            if gb.extension_degree() > 1 {
                extended += 1;
            }
            count += 1;
        }
    }
    Ok(format!("{count} nilpotent forms, {extended} needed an extension"))
}

fn polynomiality(cfg: &CensusConfig) -> Result<String, String> {
    let qs1 = [2u32, 3, 4, 5, 7, 8, 9];
    let reps = qs1
        .iter()
        .map(|&q| piece_census(1, q, cfg))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let series = |reps: &[crate::census::CountReport], qs: &[u32], label: &str| -> Vec<(i64, BigInt)> {
        qs.iter()
            .zip(reps)
            .map(|(&q, r)| (q as i64, BigInt::from(r.count(label).unwrap_or(0))))
            .collect()
    };
    let zero = poly_fit(&series(&reps, &qs1, "f0=2"), 0).map_err(|e| e.to_string())?;
    let regular = poly_fit(&series(&reps, &qs1, "f-1=1 f1=1"), 2).map_err(|e| e.to_string())?;
    ensure(zero == Polynomial::from_integers(&[1]), || format!("zero piece fits {zero}"))?;
    ensure(regular == Polynomial::from_integers(&[-1, 0, 1]), || format!("regular piece fits {regular}"))?;

    let qs2 = [2u32, 3, 4];
    let reps = qs2
        .iter()
        .map(|&q| piece_census(2, q, cfg))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let mut ds = Vec::new();
    for label in admissible_sequences(4) {
        let name = label.to_string();
        let pts = series(&reps, &qs2, &name);
        let p = integer_interpolant(&pts).ok_or_else(|| format!("{name}: no integer polynomial through {pts:?}"))?;
        ensure(p.degree().unwrap_or(0) <= 8, || format!("{name}: degree above 8"))?;
        let (ratios, ok) = ratio_consistency(&label, &qs2, cfg).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{name}: d varies with q: {ratios:?}"))?;
        ds.push(format!("d({name})={}", ratios[0].d));
    }
    Ok(format!("r=1 fits 1 and {regular}; r=2 {}", ds.join(" ")))
}

fn sigma_suite(cfg: &CensusConfig) -> Result<String, String> {
    let f = field(2);
    for r in 1..=2 {
        let s = Sigma::new(&f, r);
        let dim = s.algebra().dim();
        ensure(dim == r * (2 * r + 1) && dim == form_dim(2 * r), || format!("r={r}: dimension {dim}"))?;
        ensure(s.from_form_matrix().is_invertible(), || format!("r={r}: σ is not bijective"))?;
    }
    let s1 = Sigma::new(&f, 1);
    let group = s1.algebra().enumerate_group().map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for c in all_vectors(&f, 3) {
        let xi = DualFunctional { coeffs: c };
        let q = s1.to_form(&xi);
        ensure(s1.from_form(&q) == xi, || format!("round trip fails at {xi:?}"))?;
        for g in &group {
            let g_inv = g.inverse().expect("invertible");
            let moved = s1.algebra().coadjoint(g, &g_inv, &xi);
            ensure(s1.to_form(&moved) == q.compose(&g_inv), || format!("equivariance fails at {xi:?}"))?;
            pairs += 1;
        }
    }
    let s2 = Sigma::new(&f, 2);
    let group = s2.algebra().enumerate_group().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let samples = 1000;
    for _ in 0..samples {
        let coeffs = (0..s2.algebra().dim()).map(|_| FieldElem(rng.gen_range(0..2))).collect();
        let xi = DualFunctional { coeffs };
        let g = &group[rng.gen_range(0..group.len())];
        let g_inv = g.inverse().expect("invertible");
        let q = s2.to_form(&xi);
        ensure(s2.from_form(&q) == xi, || format!("round trip fails at {xi:?}"))?;
        let moved = s2.algebra().coadjoint(g, &g_inv, &xi);
        ensure(s2.to_form(&moved) == q.compose(&g_inv), || format!("equivariance fails at {xi:?}"))?;
    }
    Ok(format!("r=1: {pairs} (g, ξ) pairs; r=2: {samples} samples"))
}
