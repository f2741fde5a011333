//! Point counts of nilpotent elements in `g`, `g*`, `Q'(V)` and `Q(V)`.

use std::collections::HashSet;
use std::time::Instant;

use serde::Serialize;

use crate::classical::{build_algebra, flatten, num_roots, transport_matrix, unflatten, Kind, LieAlgebra};
use crate::forms::{fiber_count, polarization_matrix, Sigma};
use crate::gf::{field_of_order, FieldDesc, FieldElem};
use crate::linalg::{dot, Matrix, Vector};
use crate::quadform::SymplecticSpace;

use super::engine::{is_nilpotent_flat, tally, LinearEnumeration};
use super::report::{CountReport, LabelCount, Target};
use super::{qpow, CensusConfig, CensusError};

fn field(q: u32) -> Result<FieldDesc, CensusError> {
    Ok(field_of_order(q as u64)?)
}

/// `n² × dim g`: column `k` is the flattened `k`-th basis element.
fn basis_flat(alg: &LieAlgebra) -> Matrix {
    let cols: Vec<Vector> = alg.basis().iter().map(flatten).collect();
    Matrix::from_cols(alg.field(), &cols)
}

fn started(cfg: &CensusConfig) -> Option<Instant> {
    cfg.timing.then(Instant::now)
}

/// Number of nilpotent elements of `g` (adjoint) or `g*` (coadjoint).
///
/// `sp(V)*` is counted through `σ: sp(V)* → Q(V)` and the polarization
/// `Q ↦ A_Q`; `gl(V)*` and `so(V)*` through the isomorphism `ι: g → g*`.
pub fn count_nilpotent(
    kind: Kind,
    rank: usize,
    q: u32,
    target: Target,
    cfg: &CensusConfig,
) -> Result<CountReport, CensusError> {
    if rank == 0 {
        return Err(CensusError::ZeroRank);
    }
    let f = field(q)?;
    let n = kind.vdim(rank);
    cfg.check_budget(q, kind.algebra_dim(n))?;
    let t0 = started(cfg);
    let alg = build_algebra(kind, n, &f)?;
    let map = match (target, kind) {
        (Target::Adjoint, _) => basis_flat(&alg),
        (Target::Coadjoint, Kind::C) => {
            let sigma = Sigma::new(&f, rank);
            polarization_matrix(sigma.space()).mul(sigma.to_form_matrix())
        }
        (Target::Coadjoint, _) => {
            let iota_inv = transport_matrix(&alg)?.inverse().expect("ι is bijective");
            basis_flat(&alg).mul(&iota_inv)
        }
        (other, _) => return Err(CensusError::UnsupportedTarget(other)),
    };
    let en = LinearEnumeration::new(&map);
    let counts = tally(&en, cfg.shards, |_, a| is_nilpotent_flat(&f, n, a).then_some(()));
    let total = counts.values().sum();
    let expected = qpow(q, num_roots(kind, rank).n);
    Ok(CountReport::new(
        kind,
        rank,
        q,
        target,
        vec![LabelCount {
            label: "nilpotent".into(),
            count: total,
        }],
    )
    .expect(expected)
    .finish(cfg.shards, t0))
}

/// `n² × n(n−1)/2`: the operators `A` with `(A x, y)` the `(i, j)` elementary
/// alternating form, i.e. `A = (W G^{-1})^T`.
pub fn alternating_operators(space: &SymplecticSpace) -> Matrix {
    let f = space.field();
    let n = space.dim();
    let g_inv = space.gram().inverse().expect("nondegenerate");
    let mut cols = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut w = Matrix::zeros(f, n, n);
            w.set(i, j, f.one());
            w.set(j, i, f.neg(f.one()));
            cols.push(flatten(&w.mul(&g_inv).transpose()));
        }
    }
    Matrix::from_cols(f, &cols)
}

/// `|{A ∈ Q'(V) : A nilpotent}|` where `Q'(V) = {A : (A x, x) = 0}`.
pub fn count_alternating_nilpotent(r: usize, q: u32, cfg: &CensusConfig) -> Result<u64, CensusError> {
    let f = field(q)?;
    let n = 2 * r;
    cfg.check_budget(q, n * n.saturating_sub(1) / 2)?;
    let space = SymplecticSpace::standard(&f, r);
    let en = LinearEnumeration::new(&alternating_operators(&space));
    Ok(tally(&en, cfg.shards, |_, a| is_nilpotent_flat(&f, n, a).then_some(())).values().sum())
}

/// The nilpotent forms grouped by the fibres of `Q ↦ A_Q` over nilpotent
/// alternating `A`; the total is `q^{2r} · q^{2r²−2r}`. Only in
/// characteristic 2 is every `A_Q` alternating.
pub fn fiber_census(r: usize, q: u32, cfg: &CensusConfig) -> Result<CountReport, CensusError> {
    let f = field(q)?;
    if f.characteristic() != 2 {
        return Err(CensusError::OddCharacteristic);
    }
    let n = 2 * r;
    cfg.check_budget(q, n * n.saturating_sub(1) / 2)?;
    let t0 = started(cfg);
    let space = SymplecticSpace::standard(&f, r);
    let en = LinearEnumeration::new(&alternating_operators(&space));
    let by_size = tally(&en, cfg.shards, |_, a| {
        if !is_nilpotent_flat(&f, n, a) {
            return None;
        }
        let a = unflatten(&f, n, a);
        Some(fiber_count(&space, &a).expect("alternating by construction") as u64)
    });
    let alternating: u64 = by_size.values().sum();
    let fiber = qpow(q, 2 * r as u64);
    let counts = by_size
        .iter()
        .map(|(&size, &num)| LabelCount {
            label: format!("fiber={size}"),
            count: size * num,
        })
        .collect();
    let rr = r as u64;
    Ok(CountReport::new(Kind::C, r, q, Target::Fiber, counts)
        .expect(qpow(q, 2 * rr * rr))
        .check(format!("every fibre has q^(2r) = {fiber} forms"), by_size.keys().all(|&s| s == fiber))
        .check(
            format!("alternating nilpotent count {alternating} = q^(2r²-2r)"),
            alternating == qpow(q, 2 * rr * rr - 2 * rr),
        )
        .finish(cfg.shards, t0))
}

/// Rows: coordinates (in the basis of `g`) of a basis of each Borel.
fn borel_equations(alg: &LieAlgebra, group: &[Matrix]) -> Vec<Vec<Vector>> {
    alg.rational_borels(group)
        .iter()
        .map(|b| {
            b.basis_vectors()
                .iter()
                .map(|v| {
                    alg.coordinates(&unflatten(alg.field(), alg.vdim(), v))
                        .expect("Borel lies in g")
                })
                .collect()
        })
        .collect()
}

/// Whether `ξ` (values on the basis of `g`) vanishes on one of the Borels.
fn kills_some_borel(f: &FieldDesc, borels: &[Vec<Vector>], xi: &[FieldElem]) -> bool {
    borels.iter().any(|rows| rows.iter().all(|c| dot(f, c, xi).is_zero()))
}

/// Compares `N_g` and `N_{g*}` for types A and D: counts nilpotent `T ∈ g`,
/// checks that `ι` sends them injectively into the functionals vanishing on
/// a rational Borel, and counts those functionals independently.
pub fn transport_census(kind: Kind, vdim: usize, q: u32, cfg: &CensusConfig) -> Result<CountReport, CensusError> {
    let f = field(q)?;
    let alg = build_algebra(kind, vdim, &f)?;
    cfg.check_budget(q, alg.dim())?;
    let t0 = started(cfg);
    let iota = transport_matrix(&alg)?;
    let group = alg.enumerate_group()?;
    let borels = borel_equations(&alg, &group);

    let en = LinearEnumeration::new(&basis_flat(&alg));
    let mut nilpotent = Vec::new();
    en.for_each_in(0, en.len(), |c, t| {
        if is_nilpotent_flat(&f, vdim, t) {
            nilpotent.push(c.to_vec());
        }
    });
    let images: HashSet<Vector> = nilpotent.iter().map(|c| iota.mul_vec(c)).collect();
    let into_cone = images.iter().all(|xi| kills_some_borel(&f, &borels, xi));

    let coords = LinearEnumeration::coordinates(&f, alg.dim());
    let dual = tally(&coords, cfg.shards, |xi, _| kills_some_borel(&f, &borels, xi).then_some(()));
    let dual: u64 = dual.values().sum();
    let rank = alg.rank();
    let expected = qpow(q, num_roots(kind, rank).n);
    Ok(CountReport::new(
        kind,
        rank,
        q,
        Target::Coadjoint,
        vec![LabelCount {
            label: "nilpotent".into(),
            count: dual,
        }],
    )
    .expect(expected)
    .check(format!("|N_g| = {} = q^N", nilpotent.len()), nilpotent.len() as u64 == expected)
    .check("ι injective on N_g", images.len() == nilpotent.len())
    .check("ι(N_g) ⊆ N_g*", into_cone)
    .check("|ι(N_g)| = |N_g*|", images.len() as u64 == dual)
    .finish(cfg.shards, t0))
}

/// Agreement between "vanishes on a rational Borel" and nilpotency of
/// `A_{σ(ξ)}` over all `ξ ∈ sp(V)*`.
#[derive(Clone, Debug, Serialize)]
pub struct BorelReport {
    pub rank: usize,
    pub q: u32,
    pub functionals: u64,
    pub borels: usize,
    pub both: u64,
    pub neither: u64,
    /// Vanish on a rational Borel but `A_{σ(ξ)}` is not nilpotent.
    pub borel_only: u64,
    /// `A_{σ(ξ)}` nilpotent but no rational Borel is killed.
    pub form_only: u64,
    /// A few disagreeing `ξ`, as coordinate indices.
    pub examples: Vec<Vec<u32>>,
}

impl BorelReport {
    pub fn agrees(&self) -> bool {
        self.borel_only == 0 && self.form_only == 0
    }
}

pub fn borel_cross_check(r: usize, q: u32, cfg: &CensusConfig) -> Result<BorelReport, CensusError> {
    let f = field(q)?;
    let sigma = Sigma::new(&f, r);
    let alg = sigma.algebra();
    cfg.check_budget(q, alg.dim())?;
    let group = alg.enumerate_group()?;
    let borels = borel_equations(alg, &group);
    let n = 2 * r;
    let to_op = polarization_matrix(sigma.space()).mul(sigma.to_form_matrix());
    let verdict = |xi: &[FieldElem], a: &[FieldElem]| (kills_some_borel(&f, &borels, xi), is_nilpotent_flat(&f, n, a));
    let en = LinearEnumeration::new(&to_op);
    let t = tally(&en, cfg.shards, |xi, a| Some(verdict(xi, a)));
    let get = |k: (bool, bool)| t.get(&k).copied().unwrap_or(0);
    let mut report = BorelReport {
        rank: r,
        q,
        functionals: en.len(),
        borels: borels.len(),
        both: get((true, true)),
        neither: get((false, false)),
        borel_only: get((true, false)),
        form_only: get((false, true)),
        examples: Vec::new(),
    };
    if !report.agrees() {
        en.for_each_in(0, en.len(), |xi, a| {
            let (b, nil) = verdict(xi, a);
            if b != nil && report.examples.len() < 8 {
                report.examples.push(xi.iter().map(|x| x.index()).collect());
            }
        });
    }
    Ok(report)
}
