//! Sizes of the pieces `ζ(V_*)` and of the distinguished graded forms.

use std::time::Instant;

use serde::Serialize;

use crate::classical::{Grading, Kind};
use crate::forms::polarization_matrix;
use crate::gf::field_of_order;
use crate::linalg::{unit_vector, Matrix, Vector};
use crate::pieces::{
    admissible_sequences, classify, graded_form, standard_grading, Filtration, PieceLabel, ZetaTester,
};
use crate::quadform::{form_dim, QuadForm, SymplecticSpace};

use super::engine::{is_nilpotent_flat, tally, LinearEnumeration};
use super::report::{CountReport, LabelCount, Target};
use super::{qpow, CensusConfig, CensusError};

/// Nilpotent forms on `F_q^{2r}` grouped by the label of their piece, in
/// label order, with every admissible label listed.
pub fn piece_census(r: usize, q: u32, cfg: &CensusConfig) -> Result<CountReport, CensusError> {
    let f = field_of_order(q as u64)?;
    let n = 2 * r;
    cfg.check_budget(q, form_dim(n))?;
    let t0 = cfg.timing.then(Instant::now);
    let space = SymplecticSpace::standard(&f, r);
    let en = LinearEnumeration::new(&polarization_matrix(&space));
    let by_label = tally(&en, cfg.shards, |c, a| {
        if !is_nilpotent_flat(&f, n, a) {
            return None;
        }
        let qf = QuadForm::from_coeffs(&f, n, c.to_vec());
        Some(classify(&space, &qf).map(|c| c.label).map_err(|e| e.to_string()))
    });
    let mut counts: Vec<LabelCount> = admissible_sequences(n)
        .into_iter()
        .map(|label| LabelCount {
            count: by_label.get(&Ok(label.clone())).copied().unwrap_or(0),
            label: label.to_string(),
        })
        .collect();
    let listed = counts.len();
    for (k, &v) in &by_label {
        match k {
            Err(msg) => counts.push(LabelCount {
                label: format!("error: {msg}"),
                count: v,
            }),
            Ok(label) if !label.is_admissible() => counts.push(LabelCount {
                label: label.to_string(),
                count: v,
            }),
            Ok(_) => {}
        }
    }
    let rr = r as u64;
    Ok(CountReport::new(Kind::C, r, q, Target::PerPiece, counts.clone())
        .expect(qpow(q, 2 * rr * rr))
        .check("every nilpotent form has an admissible label", counts.len() == listed)
        .finish(cfg.shards, t0))
}

/// `|ζ(V_*)| = q^d · |Q(V)_2^0|` for one filtration with the given label.
#[derive(Clone, Debug, Serialize)]
pub struct Ratio {
    pub label: String,
    pub q: u32,
    pub zeta: u64,
    pub distinguished: u64,
    pub d: u32,
}

/// Forms in the coordinates of a coordinate grading supported on monomials
/// `x_j x_k` with `deg j + deg k` accepted by `keep`.
fn graded_family(g: &Grading, keep: impl Fn(i32) -> bool) -> Matrix {
    let deg = g.degrees();
    let n = deg.len();
    let mut cols: Vec<Vector> = Vec::new();
    let mut slot = 0;
    for j in 0..n {
        for k in j..n {
            if keep(deg[j] + deg[k]) {
                cols.push(unit_vector(form_dim(n), slot));
            }
            slot += 1;
        }
    }
    if cols.is_empty() {
        return Matrix::zeros(g.field(), form_dim(n), 0);
    }
    Matrix::from_cols(g.field(), &cols)
}

/// Counts `ζ(V_*)` and `Q(V)_2^0` for the filtration of the standard grading
/// with this label, and returns `d` with `|ζ(V_*)| = q^d |Q(V)_2^0|`.
///
/// `ζ(V_*)` lies in `Q(V)_{≥2}`, which in graded coordinates is spanned by
/// the monomials of total degree at most `−2`; `Q(V)_2` by those of degree
/// exactly `−2`.
pub fn ratio_check(label: &PieceLabel, q: u32, cfg: &CensusConfig) -> Result<Ratio, CensusError> {
    let f = field_of_order(q as u64)?;
    let r = label.total() / 2;
    let space = SymplecticSpace::standard(&f, r);
    let g = standard_grading(&space, label);
    let ge2 = graded_family(&g, |s| s <= -2);
    cfg.check_budget(q, ge2.cols())?;
    let n = 2 * r;
    let tester = ZetaTester::new(&space, &Filtration::from_grading(&g));
    let zeta: u64 = tally(&LinearEnumeration::new(&ge2), cfg.shards, |_, c| {
        tester.contains(&QuadForm::from_coeffs(&f, n, c.to_vec())).then_some(())
    })
    .values()
    .sum();
    let two = graded_family(&g, |s| s == -2);
    let distinguished: u64 = tally(&LinearEnumeration::new(&two), cfg.shards, |_, c| {
        let qf = QuadForm::from_coeffs(&f, n, c.to_vec());
        graded_form(&space, &qf, &g).ok()?.membership().in_q2_0.then_some(())
    })
    .values()
    .sum();
    let err = CensusError::NonIntegralRatio { zeta, distinguished, q };
    if distinguished == 0 || !zeta.is_multiple_of(distinguished) {
        return Err(err);
    }
    let mut ratio = zeta / distinguished;
    let mut d = 0;
    while ratio.is_multiple_of(q as u64) {
        ratio /= q as u64;
        d += 1;
    }
    if ratio != 1 {
        return Err(err);
    }
    Ok(Ratio {
        label: label.to_string(),
        q,
        zeta,
        distinguished,
        d,
    })
}

/// [`ratio_check`] at each `q`; consistent when `d` does not depend on `q`.
pub fn ratio_consistency(label: &PieceLabel, qs: &[u32], cfg: &CensusConfig) -> Result<(Vec<Ratio>, bool), CensusError> {
    let ratios = qs.iter().map(|&q| ratio_check(label, q, cfg)).collect::<Result<Vec<_>, _>>()?;
    let ok = ratios.windows(2).all(|w| w[0].d == w[1].d);
    Ok((ratios, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CensusConfig {
        CensusConfig {
            shards: 3,
            ..CensusConfig::default()
        }
    }

    #[test]
    fn rank_one_pieces() {
        let r = piece_census(1, 2, &cfg()).unwrap();
        assert!(r.passed());
        assert_eq!(r.count("f0=2"), Some(1));
        assert_eq!(r.count("f-1=1 f1=1"), Some(3));
        let r = piece_census(1, 5, &cfg()).unwrap();
        assert_eq!((r.count("f0=2"), r.count("f-1=1 f1=1")), (Some(1), Some(24)));
    }

    #[test]
    fn trivial_ratio() {
        let label = PieceLabel::new(vec![2]);
        let r = ratio_check(&label, 3, &cfg()).unwrap();
        assert_eq!((r.zeta, r.distinguished, r.d), (1, 1, 0));
    }
}
