use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::classical::Kind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Adjoint,
    Coadjoint,
    PerPiece,
    Fiber,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::Adjoint => "adjoint",
            Target::Coadjoint => "coadjoint",
            Target::PerPiece => "per_piece",
            Target::Fiber => "fiber",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Ok,
    Failed,
    /// No expectation to compare against.
    Unchecked,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Failed => "FAILED",
            Status::Unchecked => "UNCHECKED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelCount {
    pub label: String,
    pub count: u64,
}

/// Exact result of one enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub kind: Kind,
    pub rank: usize,
    pub q: u32,
    pub target: Target,
    pub counts: Vec<LabelCount>,
    pub total: u64,
    pub expected: Option<u64>,
    pub status: Status,
    /// Side conditions checked during the run; any `false` fails the report.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<(String, bool)>,
    pub elapsed_ms: u64,
    pub shards: usize,
    pub order: &'static str,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    kind: String,
    rank: usize,
    q: u32,
    target: &'a str,
    label: &'a str,
    count: u64,
    expected: Option<u64>,
    status: &'a str,
    elapsed_ms: u64,
}

impl CountReport {
    pub(crate) fn new(kind: Kind, rank: usize, q: u32, target: Target, counts: Vec<LabelCount>) -> Self {
        let total = counts.iter().map(|c| c.count).sum();
        CountReport {
            kind,
            rank,
            q,
            target,
            counts,
            total,
            expected: None,
            status: Status::Unchecked,
            checks: Vec::new(),
            elapsed_ms: 0,
            shards: 1,
            order: "lexicographic",
        }
    }

    pub(crate) fn expect(mut self, expected: u64) -> Self {
        self.expected = Some(expected);
        self.refresh_status();
        self
    }

    pub(crate) fn check(mut self, name: impl Into<String>, ok: bool) -> Self {
        self.checks.push((name.into(), ok));
        self.refresh_status();
        self
    }

    pub(crate) fn finish(mut self, shards: usize, started: Option<Instant>) -> Self {
        self.shards = shards;
        self.elapsed_ms = started.map_or(0, |t| t.elapsed().as_millis() as u64);
        self
    }

    fn refresh_status(&mut self) {
        let checks_ok = self.checks.iter().all(|(_, ok)| *ok);
        self.status = match self.expected {
            Some(e) if e == self.total && checks_ok => Status::Ok,
            Some(_) => Status::Failed,
            None if checks_ok => Status::Unchecked,
            None => Status::Failed,
        };
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Failed
    }

    pub fn count(&self, label: &str) -> Option<u64> {
        self.counts.iter().find(|c| c.label == label).map(|c| c.count)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per label plus a `total` row carrying the expectation.
    pub fn to_csv(&self, header: bool) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(header).from_writer(Vec::new());
        let kind = self.kind.to_string();
        for c in &self.counts {
            w.serialize(CsvRow {
                kind: kind.clone(),
                rank: self.rank,
                q: self.q,
                target: self.target.as_str(),
                label: &c.label,
                count: c.count,
                expected: None,
                status: "",
                elapsed_ms: self.elapsed_ms,
            })
            .expect("in-memory write");
        }
        w.serialize(CsvRow {
            kind,
            rank: self.rank,
            q: self.q,
            target: self.target.as_str(),
            label: "total",
            count: self.total,
            expected: self.expected,
            status: self.status.as_str(),
            elapsed_ms: self.elapsed_ms,
        })
        .expect("in-memory write");
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} rank={} q={} target={}",
            self.kind,
            self.rank,
            self.q,
            self.target.as_str()
        );
        let width = self.counts.iter().map(|c| c.label.len()).max().unwrap_or(0).max(5);
        for c in &self.counts {
            let _ = writeln!(s, "  {:<width$}  {}", c.label, c.count);
        }
        let _ = writeln!(s, "  {:<width$}  {}", "total", self.total);
        if let Some(e) = self.expected {
            let _ = writeln!(s, "  {:<width$}  {}", "expected", e);
        }
        for (name, ok) in &self.checks {
            let _ = writeln!(s, "  check {name}: {}", if *ok { "ok" } else { "FAILED" });
        }
        let _ = writeln!(s, "  status {}", self.status.as_str());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_and_csv() {
        let counts = vec![
            LabelCount {
                label: "a".into(),
                count: 1,
            },
            LabelCount {
                label: "b".into(),
                count: 3,
            },
        ];
        let r = CountReport::new(Kind::C, 1, 2, Target::PerPiece, counts).expect(4);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(
            r.to_csv(true),
            "kind,rank,q,target,label,count,expected,status,elapsed_ms\n\
             C,1,2,per_piece,a,1,,,0\n\
             C,1,2,per_piece,b,3,,,0\n\
             C,1,2,per_piece,total,4,4,OK,0\n"
        );
        let r = r.check("side condition", false);
        assert_eq!(r.status, Status::Failed);
        let r = CountReport::new(Kind::A, 2, 3, Target::Adjoint, vec![]).expect(1);
        assert!(!r.passed());
    }
}
