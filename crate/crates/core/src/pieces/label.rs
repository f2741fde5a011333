//! Admissible sequences `(f_a)`, which label the pieces.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// An admissible sequence, stored by its nonnegative half: `dims[a] = f_a = f_{−a}`.
///
/// Ordering is lexicographic on `(f_0, f_1, f_2, …)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PieceLabel {
    dims: Vec<usize>,
}

impl PieceLabel {
    /// Builds a label from `f_0, f_1, …`; trailing zeros are dropped.
    pub fn new(mut dims: Vec<usize>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
        }
        PieceLabel { dims }
    }

    /// Builds a label from graded dimensions, or `None` if they are not symmetric.
    pub fn from_graded(dims: &BTreeMap<i32, usize>) -> Option<Self> {
        let get = |a: i32| dims.get(&a).copied().unwrap_or(0);
        let top = dims.iter().filter(|(_, &d)| d > 0).map(|(a, _)| a.abs()).max().unwrap_or(0);
        let mut half = Vec::new();
        for a in 0..=top {
            if get(a) != get(-a) {
                return None;
            }
            half.push(get(a));
        }
        Some(Self::new(half))
    }

    /// `f_a` for any integer `a`.
    pub fn f(&self, a: i32) -> usize {
        self.dims.get(a.unsigned_abs() as usize).copied().unwrap_or(0)
    }

    /// `f_0, f_1, …` up to the last nonzero entry.
    pub fn half(&self) -> &[usize] {
        &self.dims
    }

    /// Largest `m` with `f_m ≠ 0` (0 for the empty label).
    pub fn top(&self) -> i32 {
        self.dims.len().saturating_sub(1) as i32
    }

    pub fn total(&self) -> usize {
        self.dims.iter().enumerate().map(|(a, &f)| if a == 0 { f } else { 2 * f }).sum()
    }

    /// `(a, f_a)` for every nonzero `f_a`, in increasing `a`.
    pub fn graded(&self) -> BTreeMap<i32, usize> {
        let t = self.top();
        (-t..=t).filter(|&a| self.f(a) > 0).map(|a| (a, self.f(a))).collect()
    }

    /// `f_a` even for even `a`, and `f_0 ≥ f_2 ≥ …`, `f_1 ≥ f_3 ≥ …`.
    pub fn is_admissible(&self) -> bool {
        let d = &self.dims;
        (0..d.len()).all(|a| (a % 2 == 1 || d[a].is_multiple_of(2)) && (a + 2 >= d.len() || d[a] >= d[a + 2]))
    }

    /// `V_{≥a}` dimensions: `Σ_{b ≥ a} f_b`.
    pub fn dim_ge(&self, a: i32) -> usize {
        let t = self.top();
        (a.max(-t)..=t).map(|b| self.f(b)).sum()
    }
}

impl fmt::Display for PieceLabel {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.graded().iter().map(|(a, f)| format!("f{a}={f}")).collect();
        if parts.is_empty() {
            write!(out, "empty")
        } else {
            write!(out, "{}", parts.join(" "))
        }
    }
}

/// Every admissible sequence with `Σ f_a = dim`, in ascending label order.
pub fn admissible_sequences(dim: usize) -> Vec<PieceLabel> {
    let mut out = Vec::new();
    if dim % 2 == 1 {
        return out;
    }
    let mut dims = Vec::new();
    extend(&mut dims, dim, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Chooses `f_a` for `a = dims.len()` given the remaining dimension budget.
fn extend(dims: &mut Vec<usize>, remaining: usize, out: &mut Vec<PieceLabel>) {
    if remaining == 0 {
        out.push(PieceLabel::new(dims.clone()));
        return;
    }
    let a = dims.len();
    let weight = if a == 0 { 1 } else { 2 };
    let bound = if a >= 2 { dims[a - 2] } else { usize::MAX };
    let max = (remaining / weight).min(bound);
    // once both parity chains are exhausted nothing more can be placed
    if a >= 2 && dims[a - 2] == 0 && dims[a - 1] == 0 {
        return;
    }
    for f in 0..=max {
        if a.is_multiple_of(2) && f % 2 == 1 {
            continue;
        }
        dims.push(f);
        extend(dims, remaining - weight * f, out);
        dims.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        assert_eq!(admissible_sequences(0), vec![PieceLabel::new(vec![])]);
        let two = admissible_sequences(2);
        assert_eq!(two, vec![PieceLabel::new(vec![0, 1]), PieceLabel::new(vec![2])]);
        let four: Vec<Vec<usize>> = admissible_sequences(4).iter().map(|l| l.half().to_vec()).collect();
        assert_eq!(four, vec![vec![0, 1, 0, 1], vec![0, 2], vec![2, 1], vec![4]]);
    }

    #[test]
    fn display() {
        assert_eq!(PieceLabel::new(vec![0, 1]).to_string(), "f-1=1 f1=1");
        assert_eq!(PieceLabel::new(vec![2]).to_string(), "f0=2");
    }

    #[test]
    fn graded_round_trip() {
        for l in admissible_sequences(8) {
            assert!(l.is_admissible());
            assert_eq!(PieceLabel::from_graded(&l.graded()).unwrap(), l);
            assert_eq!(l.total(), 8);
            assert_eq!(l.dim_ge(-l.top()), 8);
        }
    }
}
