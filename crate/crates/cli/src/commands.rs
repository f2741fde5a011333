use std::fmt::Write as _;
use std::path::Path;

use num::BigInt;
use serde::Serialize;
use serde_json::json;

use nilcone::acceptance::{criteria, criterion, format_line, Criterion};
use nilcone::census::{
    count_nilpotent, fiber_census, integer_interpolant, piece_census, poly_fit, transport_census, CensusConfig,
    CensusError, CountReport, Target,
};
use nilcone::classical::{Grading, Kind};
use nilcone::forms::{good_basis_with_cap, FormsError};
use nilcone::gf::{field_of_order, FieldDesc, GfError};
use nilcone::linalg::Matrix;
use nilcone::pieces::{classify as classify_form, symplectic_group, witness as find_witness, PiecesError};
use nilcone::quadform::{QuadForm, SymplecticSpace};

use crate::input::{format_vector, parse_degrees, parse_form, read_forms};
use crate::{CountTarget, Failure, Format, Report};

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            CensusError::Field(_) | CensusError::ZeroRank | CensusError::UnsupportedTarget(_) => {
                Failure::Usage(e.to_string())
            }
            CensusError::Pieces(p) => p.into(),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

impl From<PiecesError> for Failure {
    fn from(e: PiecesError) -> Self {
        match e {
            PiecesError::SizeLimitExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

impl From<GfError> for Failure {
    fn from(e: GfError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<FormsError> for Failure {
    fn from(e: FormsError) -> Self {
        Failure::Failed(e.to_string())
    }
}

fn symplectic_only(kind: Kind) -> Result<(), Failure> {
    if kind == Kind::C {
        Ok(())
    } else {
        Err(Failure::Usage(format!("quadratic forms need kind C, got {kind}")))
    }
}

fn space(rank: usize, q: u32) -> Result<(FieldDesc, SymplecticSpace), Failure> {
    if rank == 0 {
        return Err(Failure::Usage("rank must be at least 1".into()));
    }
    let f = field_of_order(q as u64)?;
    let s = SymplecticSpace::standard(&f, rank);
    Ok((f, s))
}

fn json_text<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn one_report(kind: Kind, rank: usize, q: u32, target: CountTarget, cfg: &CensusConfig) -> Result<CountReport, Failure> {
    let report = match target {
        CountTarget::Adjoint => count_nilpotent(kind, rank, q, Target::Adjoint, cfg)?,
        CountTarget::Coadjoint => count_nilpotent(kind, rank, q, Target::Coadjoint, cfg)?,
        CountTarget::PerPiece => {
            symplectic_only(kind)?;
            piece_census(rank, q, cfg)?
        }
        CountTarget::Fiber => {
            symplectic_only(kind)?;
            fiber_census(rank, q, cfg)?
        }
        CountTarget::Transport => {
            if kind == Kind::C {
                return Err(Failure::Usage("transport applies to kinds A and D".into()));
            }
            transport_census(kind, kind.vdim(rank), q, cfg)?
        }
    };
    Ok(report)
}

fn render_reports(reports: &[CountReport], fmt: Format) -> String {
    match fmt {
        Format::Json if reports.len() == 1 => json_text(&reports[0]),
        Format::Json => json_text(reports),
        Format::Csv => reports.iter().enumerate().map(|(i, r)| r.to_csv(i == 0)).collect(),
        Format::Table => reports.iter().map(|r| r.to_table()).collect::<Vec<_>>().join("\n"),
    }
}

pub fn count(
    kind: Kind,
    rank: usize,
    qs: &[u32],
    target: CountTarget,
    fmt: Format,
    cfg: &CensusConfig,
) -> Result<Report, Failure> {
    let reports = qs
        .iter()
        .map(|&q| one_report(kind, rank, q, target, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Report {
        ok: reports.iter().all(|r| r.passed()),
        text: render_reports(&reports, fmt),
    })
}

#[derive(Serialize)]
struct Classified {
    form: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extension_degree: Option<u32>,
    /// `(i, e_i)` with coordinates over the (possibly extended) field.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    good_basis: Vec<(i32, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn classify_one(s: &SymplecticSpace, text: &str, q: &QuadForm, cap: u32) -> Classified {
    let mut out = Classified {
        form: text.to_string(),
        label: None,
        extension_degree: None,
        good_basis: Vec::new(),
        error: None,
    };
    match classify_form(s, q) {
        Ok(c) => out.label = Some(c.label.to_string()),
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    }
    match good_basis_with_cap(s, q, cap) {
        Ok(gb) => {
            out.extension_degree = Some(gb.extension_degree());
            out.good_basis = gb.indices().into_iter().map(|i| (i, format_vector(gb.vector(i)))).collect();
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

pub fn classify(
    kind: Kind,
    rank: usize,
    q: u32,
    form: Option<&str>,
    file: Option<&Path>,
    cap: u32,
    fmt: Format,
) -> Result<Report, Failure> {
    symplectic_only(kind)?;
    let (f, s) = space(rank, q)?;
    let n = s.dim();
    let forms = match (form, file) {
        (Some(text), _) => vec![(text.to_string(), parse_form(&f, n, text).map_err(Failure::Usage)?)],
        (None, Some(path)) => read_forms(&f, n, path).map_err(Failure::Usage)?,
        (None, None) => return Err(Failure::Usage("give --form or --file".into())),
    };
    let results: Vec<Classified> = forms.iter().map(|(t, qf)| classify_one(&s, t, qf, cap)).collect();
    let ok = results.iter().all(|r| r.error.is_none());
    let text = match fmt {
        Format::Json => json_text(&results),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["form", "label", "extension_degree", "good_basis", "error"])
                .expect("in-memory write");
            for r in &results {
                let basis: Vec<String> = r.good_basis.iter().map(|(i, v)| format!("e{i}=({v})")).collect();
                w.write_record([
                    r.form.clone(),
                    r.label.clone().unwrap_or_default(),
                    r.extension_degree.map(|d| d.to_string()).unwrap_or_default(),
                    basis.join(" "),
                    r.error.clone().unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Table => {
            let mut t = String::new();
            for r in &results {
                let _ = writeln!(t, "form {}", r.form);
                if let Some(l) = &r.label {
                    let _ = writeln!(t, "  label {l}");
                }
                if let Some(d) = r.extension_degree {
                    let _ = writeln!(t, "  good basis over F_{}", (q as u64).pow(d));
                    for (i, v) in &r.good_basis {
                        let _ = writeln!(t, "    e{i:<3} ({v})");
                    }
                }
                if let Some(e) = &r.error {
                    let _ = writeln!(t, "  error {e}");
                }
            }
            t
        }
    };
    Ok(Report { text, ok })
}

fn matrix_rows(m: &Matrix) -> Vec<String> {
    m.row_vectors().iter().map(|r| format_vector(r)).collect()
}

pub fn witness(
    kind: Kind,
    rank: usize,
    q: u32,
    form: &str,
    grading: &str,
    exhaustive: bool,
    fmt: Format,
) -> Result<Report, Failure> {
    symplectic_only(kind)?;
    let (f, s) = space(rank, q)?;
    let n = s.dim();
    let qf = parse_form(&f, n, form).map_err(Failure::Usage)?;
    let degrees = parse_degrees(n, grading).map_err(Failure::Usage)?;
    let g = Grading::coordinate(&f, degrees.clone());
    let group = if exhaustive { Some(symplectic_group(&s)?) } else { None };
    let w = find_witness(&s, &qf, &g, group.as_deref())?;
    let rows = matrix_rows(&w.b);
    let text = match fmt {
        Format::Json => json_text(&json!({
            "form": form,
            "grading": degrees,
            "path": w.path,
            "b": rows,
        })),
        Format::Csv => {
            let mut w2 = csv::Writer::from_writer(Vec::new());
            w2.write_record(["row", "entries"]).expect("in-memory write");
            for (i, r) in rows.iter().enumerate() {
                w2.write_record([i.to_string(), r.clone()]).expect("in-memory write");
            }
            String::from_utf8(w2.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Table => {
            let mut t = format!("form {form}\ngrading {grading}\npath {}\nB =\n", w.path);
            for r in &rows {
                let _ = writeln!(t, "  [{}]", r.replace(',', " "));
            }
            t
        }
    };
    Ok(Report { text, ok: true })
}

#[derive(Serialize)]
struct FitRow {
    label: String,
    points: Vec<(u32, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn fit(
    kind: Kind,
    rank: usize,
    qs: &[u32],
    target: CountTarget,
    degree: Option<usize>,
    fmt: Format,
    cfg: &CensusConfig,
) -> Result<Report, Failure> {
    if target == CountTarget::Transport {
        return Err(Failure::Usage("fit needs a counting target".into()));
    }
    let reports = qs
        .iter()
        .map(|&q| one_report(kind, rank, q, target, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let Some(first) = reports.first() else {
        return Err(Failure::Usage("no field orders given".into()));
    };
    let mut labels: Vec<String> = first.counts.iter().map(|c| c.label.clone()).collect();
    labels.push("total".into());
    let rows: Vec<FitRow> = labels
        .into_iter()
        .map(|label| {
            let points: Vec<(u32, u64)> = reports
                .iter()
                .map(|r| {
                    let c = if label == "total" { Some(r.total) } else { r.count(&label) };
                    (r.q, c.unwrap_or(0))
                })
                .collect();
            let big: Vec<(i64, BigInt)> = points.iter().map(|&(q, c)| (q as i64, BigInt::from(c))).collect();
            let (polynomial, error) = match degree {
                Some(d) => match poly_fit(&big, d) {
                    Ok(p) => (Some(p.to_string()), None),
                    Err(e) => (None, Some(e.to_string())),
                },
                None => match integer_interpolant(&big) {
                    Some(p) => (Some(p.to_string()), None),
                    None => (None, Some("no interpolant with integer coefficients".to_string())),
                },
            };
            FitRow {
                label,
                points,
                polynomial,
                error,
            }
        })
        .collect();
    let ok = rows.iter().all(|r| r.error.is_none()) && reports.iter().all(|r| r.passed());
    let text = match fmt {
        Format::Json => json_text(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["label", "points", "polynomial", "error"]).expect("in-memory write");
            for r in &rows {
                let pts: Vec<String> = r.points.iter().map(|(q, c)| format!("{q}:{c}")).collect();
                w.write_record([
                    r.label.clone(),
                    pts.join(" "),
                    r.polynomial.clone().unwrap_or_default(),
                    r.error.clone().unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Table => {
            let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
            let qs: Vec<String> = qs.iter().map(|q| q.to_string()).collect();
            let mut t = format!("{kind} rank={rank} q={} target={}\n", qs.join(","), target.name());
            for r in &rows {
                let rhs = r.polynomial.clone().unwrap_or_else(|| format!("error: {}", r.error.as_deref().unwrap_or("")));
                let _ = writeln!(t, "  {:<width$}  {rhs}", r.label);
            }
            t
        }
    };
    Ok(Report { text, ok })
}

pub fn verify(only: &[String], fmt: Format, cfg: &CensusConfig) -> Result<Report, Failure> {
    let selected: Vec<&'static dyn Criterion> = if only.is_empty() {
        criteria()
    } else {
        only.iter()
            .map(|id| criterion(id).ok_or_else(|| Failure::Usage(format!("unknown criterion '{id}'"))))
            .collect::<Result<_, _>>()?
    };
    let outcomes: Vec<_> = selected.iter().map(|c| (*c, c.run(cfg))).collect();
    let ok = outcomes.iter().all(|(_, o)| o.passed);
    let text = match fmt {
        Format::Json => {
            let rows: Vec<_> = outcomes
                .iter()
                .map(|(c, o)| {
                    json!({
                        "id": c.id(),
                        "title": c.title(),
                        "tolerance": c.tolerance(),
                        "passed": o.passed,
                        "detail": o.detail,
                    })
                })
                .collect();
            json_text(&rows)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "status", "title", "tolerance", "detail"])
                .expect("in-memory write");
            for (c, o) in &outcomes {
                w.write_record([c.id(), if o.passed { "PASS" } else { "FAIL" }, c.title(), c.tolerance(), &o.detail])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Table => outcomes.iter().map(|(c, o)| format_line(*c, o) + "\n").collect(),
    };
    Ok(Report { text, ok })
}
