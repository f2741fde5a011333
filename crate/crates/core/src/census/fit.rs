//! Exact interpolation of counts as polynomials in `q`.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;

use super::CensusError;

/// Coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<BigRational>,
}

impl Polynomial {
    fn trimmed(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::trimmed(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let coef = if a.is_one() && k > 0 { String::new() } else { a.to_string() };
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coef}q")?,
                _ => write!(f, "{coef}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// Newton divided differences of the points.
fn divided_differences(points: &[(i64, BigRational)]) -> Vec<BigRational> {
    let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    let mut out = vec![table[0].clone()];
    for level in 1..points.len() {
        for i in 0..points.len() - level {
            let dx = BigRational::from_integer((points[i + level].0 - points[i].0).into());
            table[i] = (&table[i + 1] - &table[i]) / dx;
        }
        out.push(table[0].clone());
    }
    out
}

/// Expands `Σ_k a_k Π_{i<k} (q − x_i)` into monomial coefficients.
fn newton_to_monomial(nodes: &[i64], dd: &[BigRational]) -> Vec<BigRational> {
    let mut result = vec![BigRational::zero(); dd.len()];
    let mut basis = vec![BigRational::one()];
    for (k, a) in dd.iter().enumerate() {
        for (r, b) in result.iter_mut().zip(&basis) {
            *r += a * b;
        }
        if k + 1 < dd.len() {
            // basis *= (q − x_k)
            let x = BigRational::from_integer(nodes[k].into());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * &x;
            }
            basis = next;
        }
    }
    result
}

/// The polynomial of degree at most `degree_bound` through the first
/// `degree_bound + 1` points; every further point must lie on it.
pub fn poly_fit(points: &[(i64, BigInt)], degree_bound: usize) -> Result<Polynomial, CensusError> {
    let needed = degree_bound + 1;
    if points.len() < needed {
        return Err(CensusError::InsufficientPoints {
            needed,
            got: points.len(),
        });
    }
    let pts: Vec<(i64, BigRational)> = points
        .iter()
        .map(|(x, y)| (*x, BigRational::from_integer(y.clone())))
        .collect();
    let head = &pts[..needed];
    let nodes: Vec<i64> = head.iter().map(|p| p.0).collect();
    let p = Polynomial::trimmed(newton_to_monomial(&nodes, &divided_differences(head)));
    for (x, y) in &pts[needed..] {
        if p.eval(&BigRational::from_integer((*x).into())) != *y {
            return Err(CensusError::Inconsistent { q: *x });
        }
    }
    Ok(p)
}

/// The lowest-degree interpolant, if it has integer coefficients.
///
/// Over distinct integer nodes an integer polynomial through the points
/// exists exactly when all divided differences are integers, and then the
/// Newton form has integer coefficients.
pub fn integer_interpolant(points: &[(i64, BigInt)]) -> Option<Polynomial> {
    if points.is_empty() {
        return Some(Polynomial { coeffs: Vec::new() });
    }
    let pts: Vec<(i64, BigRational)> = points
        .iter()
        .map(|(x, y)| (*x, BigRational::from_integer(y.clone())))
        .collect();
    let dd = divided_differences(&pts);
    if !dd.iter().all(|c| c.is_integer()) {
        return None;
    }
    let nodes: Vec<i64> = pts.iter().map(|p| p.0).collect();
    Some(Polynomial::trimmed(newton_to_monomial(&nodes, &dd)))
}
