//! Exact arithmetic in small finite fields `F_{p^k}`.
//!
//! Elements are encoded as integers `c_0 + c_1 p + … + c_{k-1} p^{k-1}` where
//! `c_i` are the coefficients of the residue polynomial modulo the field's
//! defining polynomial. Over `F_2` the encoding is the bit pattern of the
//! coefficient vector, so addition is XOR.
//!
//! The defining polynomial is the lexicographically smallest monic irreducible
//! polynomial of degree `k`, comparing coefficient lists from `x^{k-1}` down
//! to the constant term (equivalently, the smallest encoding of the lower
//! coefficients). Two fields built from the same `(p, k)` are therefore
//! bit-for-bit identical.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order `p^k` accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;
/// Largest characteristic accepted by [`make_field`].
pub const MAX_CHARACTERISTIC: u32 = 64;
/// Default cap on the total extension degree used to emulate closure.
pub const DEFAULT_EXTENSION_CAP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NonPrime(u32),
    #[error("field of order {p}^{k} exceeds the size limit")]
    SizeLimitExceeded { p: u32, k: u32 },
    #[error("extension degree must be at least {min}, got {got}")]
    InvalidDegree { min: u32, got: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("value {value} is not an element of a field of order {q}")]
    NotAnElement { value: u32, q: u32 },
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1 && p <= u32::MAX as u64).then_some((p as u32, k))
}

/// An element of some [`FieldDesc`], stored in its integer encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldInner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic defining polynomial, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed primitive element `g`, doubled for wrap-free lookup.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Full addition table for small odd-characteristic fields.
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
}

/// A finite field descriptor. Cheap to clone; equal descriptors define
/// identical arithmetic.
#[derive(Clone)]
pub struct FieldDesc {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldDesc {}

impl std::hash::Hash for FieldDesc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.k)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}", self.inner.q)
        }
    }
}

/// Builds `F_{p^k}` with the lexicographically smallest monic irreducible modulus.
pub fn make_field(p: u32, k: u32) -> Result<FieldDesc, GfError> {
    if !is_prime(p) {
        return Err(GfError::NonPrime(p));
    }
    if k == 0 {
        return Err(GfError::InvalidDegree { min: 1, got: 0 });
    }
    if p > MAX_CHARACTERISTIC {
        return Err(GfError::SizeLimitExceeded { p, k });
    }
    let order = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER);
    let Some(q) = order else {
        return Err(GfError::SizeLimitExceeded { p, k });
    };
    let modulus = smallest_irreducible(p, k);
    Ok(FieldDesc::with_modulus(p, k, q as u32, modulus))
}

/// Builds the prime field `F_p`.
pub fn prime_field(p: u32) -> Result<FieldDesc, GfError> {
    make_field(p, 1)
}

/// Builds `F_q` for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<FieldDesc, GfError> {
    match prime_power(q) {
        Some((p, k)) => make_field(p, k),
        None => Err(GfError::NonPrime(q.min(u32::MAX as u64) as u32)),
    }
}

// --- polynomial helpers over F_p (coefficient vectors, constant term first) ---

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let lead_inv = inv_mod_p(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k <= 1 {
        return true;
    }
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        // x: the prime field needs no reduction beyond mod p.
        return vec![0, 1];
    }
    let count = (p as u64).pow(k);
    for low in 0..count {
        let mut f = digits(low, p, k as usize);
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldDesc {
    fn with_modulus(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let kk = k as usize;
        let encode = |c: &[u32]| -> u32 {
            c.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64) as u32
        };
        let decode = |n: u32| digits(n as u64, p, kk);
        // Multiply by a fixed element modulo `modulus` in coefficient space.
        let mulmod = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let mut prod = vec![0u64; 2 * kk];
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
                }
            }
            let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(kk, 0);
            r
        };

        let mut exp = vec![0u32; 2 * q as usize];
        let mut log = vec![0u32; q as usize];
        let order = q - 1;
        let mut found = false;
        for cand in 1..q {
            let g = decode(cand);
            let mut cur = decode(1);
            let mut ok = true;
            for i in 0..order {
                let c = encode(&cur);
                if i > 0 && c == 1 {
                    ok = false;
                    break;
                }
                exp[i as usize] = c;
                cur = mulmod(&cur, &g);
            }
            if ok {
                found = true;
                break;
            }
        }
        assert!(found, "multiplicative group of a finite field is cyclic");
        for i in 0..order as usize {
            exp[i + order as usize] = exp[i];
            log[exp[i] as usize] = i as u32;
        }
        if q == 2 {
            exp[1] = 1;
        }

        let neg: Vec<u32> = (0..q)
            .map(|a| encode(&decode(a).iter().map(|&d| (p - d) % p).collect::<Vec<_>>()))
            .collect();
        let add_table = (p != 2 && q <= 256).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = decode(a);
                for b in 0..q {
                    let db = decode(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = encode(&s);
                }
            }
            t
        });

        FieldDesc {
            inner: Arc::new(FieldInner {
                p,
                k,
                q,
                modulus,
                exp,
                log,
                add_table,
                neg,
            }),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Coefficients of the defining polynomial, constant term first (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_gf2(&self) -> bool {
        self.inner.q == 2
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// Element with the given integer encoding.
    pub fn elem(&self, value: u32) -> Result<FieldElem, GfError> {
        if value < self.inner.q {
            Ok(FieldElem(value))
        } else {
            Err(GfError::NotAnElement {
                value,
                q: self.inner.q,
            })
        }
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem, GfError> {
        let p = self.inner.p;
        if coeffs.len() != self.inner.k as usize {
            return Err(GfError::NotAnElement {
                value: coeffs.len() as u32,
                q: self.inner.q,
            });
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(GfError::NotAnElement {
                    value: c,
                    q: self.inner.q,
                });
            }
            v = v * p as u64 + c as u64;
        }
        Ok(FieldElem(v as u32))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        digits(a.0 as u64, self.inner.p, self.inner.k as usize)
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.inner.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let inner = &*self.inner;
        if inner.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if inner.k == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= inner.p { s - inner.p } else { s });
        }
        if let Some(t) = &inner.add_table {
            return FieldElem(t[(a.0 * inner.q + b.0) as usize]);
        }
        let p = inner.p;
        let (mut x, mut y, mut scale, mut out) = (a.0, b.0, 1u32, 0u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale = scale.wrapping_mul(p);
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let inner = &*self.inner;
        FieldElem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let inner = &*self.inner;
        let l = inner.log[a.0 as usize];
        Ok(FieldElem(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let inner = &*self.inner;
        let order = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64;
        FieldElem(inner.exp[((l * (e % order)) % order) as usize])
    }

    /// Inverse Frobenius `a ↦ a^{1/p}`; a bijection on a finite field.
    pub fn frobenius_root(&self, a: FieldElem) -> FieldElem {
        let inner = &*self.inner;
        self.pow(a, (inner.p as u64).pow(inner.k - 1))
    }

    /// Square root in characteristic 2 (every element is a square).
    pub fn sqrt_char2(&self, a: FieldElem) -> FieldElem {
        debug_assert_eq!(self.inner.p, 2);
        self.frobenius_root(a)
    }

    /// Some square root of `a`, if one exists in this field.
    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        if self.inner.p == 2 {
            return Some(self.sqrt_char2(a));
        }
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    /// Attaches this field to an element for checked arithmetic.
    pub fn bind(&self, a: FieldElem) -> BoundElem {
        BoundElem {
            field: self.clone(),
            value: a,
        }
    }
}

/// A field element that knows its field; used by the checked [`arith`] entry point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundElem {
    pub field: FieldDesc,
    pub value: FieldElem,
}

pub enum Arith<'a> {
    Add(&'a BoundElem),
    Mul(&'a BoundElem),
    Inv,
    Pow(u64),
}

/// Checked arithmetic between elements that carry their field.
pub fn arith(op: Arith<'_>, a: &BoundElem) -> Result<BoundElem, GfError> {
    let f = &a.field;
    let same = |b: &BoundElem| {
        if &b.field == f {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    };
    let value = match op {
        Arith::Add(b) => {
            same(b)?;
            f.add(a.value, b.value)
        }
        Arith::Mul(b) => {
            same(b)?;
            f.mul(a.value, b.value)
        }
        Arith::Inv => f.inv(a.value)?,
        Arith::Pow(e) => f.pow(a.value, e),
    };
    Ok(f.bind(value))
}

/// An injective ring homomorphism between two fields of the same characteristic.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: FieldDesc,
    pub target: FieldDesc,
    table: Vec<FieldElem>,
}

impl Embedding {
    pub fn identity(field: &FieldDesc) -> Self {
        Embedding {
            source: field.clone(),
            target: field.clone(),
            table: field.elements().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, a: FieldElem) -> FieldElem {
        self.table[a.0 as usize]
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        assert_eq!(self.target, other.source);
        Embedding {
            source: self.source.clone(),
            target: other.target.clone(),
            table: self.table.iter().map(|&a| other.apply(a)).collect(),
        }
    }
}

/// Builds `F_{p^{km}}` together with an embedding of `field` into it.
pub fn extend(field: &FieldDesc, m: u32) -> Result<(FieldDesc, Embedding), GfError> {
    if m < 2 {
        return Err(GfError::InvalidDegree { min: 2, got: m });
    }
    let p = field.characteristic();
    let k = field.degree();
    let big = make_field(p, k.checked_mul(m).ok_or(GfError::SizeLimitExceeded { p, k })?)?;
    let root = if k == 1 {
        None
    } else {
        // Smallest root of the small field's modulus inside the big field.
        let modulus = field.modulus();
        big.elements().find(|&x| {
            let mut acc = FieldElem::ZERO;
            for &c in modulus.iter().rev() {
                acc = big.add(big.mul(acc, x), FieldElem(c));
            }
            acc.is_zero()
        })
    };
    let table = field
        .elements()
        .map(|a| match root {
            None => a,
            Some(alpha) => {
                let mut acc = FieldElem::ZERO;
                for c in field.coeffs(a).into_iter().rev() {
                    acc = big.add(big.mul(acc, alpha), FieldElem(c));
                }
                acc
            }
        })
        .collect();
    Ok((
        big.clone(),
        Embedding {
            source: field.clone(),
            target: big,
            table,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<FieldDesc> {
        [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4), (5, 2)]
            .iter()
            .map(|&(p, k)| make_field(p, k).unwrap())
            .collect()
    }

    #[test]
    fn prime_field_f2() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.add(f.one(), f.one()), f.zero());
    }

    #[test]
    fn f4_modulus_and_product() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.from_coeffs(&[0, 1]).unwrap();
        let x_plus_1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(x, x), x_plus_1);
    }

    #[test]
    fn only_irreducible_quadratic_over_f2() {
        // Exhaustive oracle: x^2 + a x + b is irreducible iff it has no root in F_2.
        let irreducible: Vec<(u32, u32)> = (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .filter(|&(a, b)| (0..2).all(|x| (x * x + a * x + b) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![(1, 1)]);
    }

    #[test]
    fn modulus_choices_are_smallest() {
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), GfError::NonPrime(4));
        assert!(matches!(
            make_field(2, 21),
            Err(GfError::SizeLimitExceeded { .. })
        ));
        assert!(matches!(
            make_field(67, 1),
            Err(GfError::SizeLimitExceeded { .. })
        ));
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.inv(f.zero()), Err(GfError::DivisionByZero));
    }

    #[test]
    fn checked_arith_detects_mismatch() {
        let f2 = make_field(2, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let a = f2.bind(f2.one());
        let b = f3.bind(f3.one());
        assert_eq!(arith(Arith::Add(&b), &a), Err(GfError::FieldMismatch));
        assert_eq!(arith(Arith::Add(&a), &a).unwrap().value, f2.zero());
        assert_eq!(
            arith(Arith::Inv, &f2.bind(f2.zero())),
            Err(GfError::DivisionByZero)
        );
        let f9 = make_field(3, 2).unwrap();
        let g = f9.bind(FieldElem(5));
        assert_eq!(arith(Arith::Pow(8), &g).unwrap().value, f9.one());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                    assert_eq!(f.pow(a, f.order() as u64 - 1), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in small_fields() {
            let p = f.characteristic() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
                assert_eq!(f.pow(f.frobenius_root(a), p), a);
            }
        }
    }

    #[test]
    fn extension_of_prime_field() {
        let f2 = make_field(2, 1).unwrap();
        let (f4, emb) = extend(&f2, 2).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(emb.apply(FieldElem(0)), FieldElem(0));
        assert_eq!(emb.apply(FieldElem(1)), FieldElem(1));
        assert!(matches!(
            extend(&f2, 25),
            Err(GfError::SizeLimitExceeded { .. })
        ));
        assert!(matches!(extend(&f2, 1), Err(GfError::InvalidDegree { .. })));
    }

    #[test]
    fn extension_embedding_is_a_homomorphism() {
        for (p, k, m) in [(2, 2, 2), (2, 1, 3), (3, 1, 2), (3, 2, 2), (2, 3, 2)] {
            let small = make_field(p, k).unwrap();
            let (big, emb) = extend(&small, m).unwrap();
            assert_eq!(big.order(), small.order().pow(m));
            let mut seen = std::collections::HashSet::new();
            for a in small.elements() {
                assert!(seen.insert(emb.apply(a)), "embedding must be injective");
                for b in small.elements() {
                    assert_eq!(emb.apply(small.add(a, b)), big.add(emb.apply(a), emb.apply(b)));
                    assert_eq!(emb.apply(small.mul(a, b)), big.mul(emb.apply(a), emb.apply(b)));
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
