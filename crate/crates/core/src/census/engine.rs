//! Enumeration of `F_q^d` in lexicographic order (first coordinate most
//! significant) together with the image under a fixed linear map, split into
//! contiguous shards that run in parallel.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::gf::{FieldDesc, FieldElem};
use crate::linalg::Matrix;

/// All coordinate vectors `c ∈ F_q^d` with their images `M c`.
pub struct LinearEnumeration {
    field: FieldDesc,
    dim: usize,
    /// Columns of `M`.
    cols: Vec<Vec<FieldElem>>,
    image_len: usize,
}

impl LinearEnumeration {
    pub fn new(map: &Matrix) -> Self {
        LinearEnumeration {
            field: map.field().clone(),
            dim: map.cols(),
            cols: map.col_vectors(),
            image_len: map.rows(),
        }
    }

    /// Enumerates the coordinates only.
    pub fn coordinates(field: &FieldDesc, dim: usize) -> Self {
        LinearEnumeration {
            field: field.clone(),
            dim,
            cols: vec![Vec::new(); dim],
            image_len: 0,
        }
    }

    pub fn len(&self) -> u64 {
        (self.field.order() as u64).pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Calls `visit(c, M c)` for points `start..end` of the enumeration.
    pub fn for_each_in(&self, start: u64, end: u64, mut visit: impl FnMut(&[FieldElem], &[FieldElem])) {
        if start >= end {
            return;
        }
        let f = &self.field;
        let q = f.order() as u64;
        let mut coords = vec![FieldElem::ZERO; self.dim];
        let mut rest = start;
        for c in coords.iter_mut().rev() {
            *c = FieldElem((rest % q) as u32);
            rest /= q;
        }
        let mut image = vec![FieldElem::ZERO; self.image_len];
        for (c, col) in coords.iter().zip(&self.cols) {
            add_scaled(f, &mut image, *c, col);
        }
        for _ in start..end {
            visit(&coords, &image);
            // odometer step on the last coordinate, carrying leftwards
            for k in (0..self.dim).rev() {
                let old = coords[k];
                let new = FieldElem((old.index() + 1) % q as u32);
                coords[k] = new;
                add_scaled(f, &mut image, f.sub(new, old), &self.cols[k]);
                if !new.is_zero() {
                    break;
                }
            }
        }
    }
}

fn add_scaled(f: &FieldDesc, acc: &mut [FieldElem], c: FieldElem, col: &[FieldElem]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(col) {
        if !x.is_zero() {
            *a = f.add(*a, f.mul(c, *x));
        }
    }
}

/// Tallies `key(c, M c)` over the whole enumeration, split into `shards`
/// contiguous ranges processed by at most `shards` workers. The result does
/// not depend on the shard count.
pub fn tally<K, F>(en: &LinearEnumeration, shards: usize, key: F) -> BTreeMap<K, u64>
where
    K: Ord + Send,
    F: Fn(&[FieldElem], &[FieldElem]) -> Option<K> + Sync,
{
    let shards = shards.max(1);
    let total = en.len();
    let bounds: Vec<(u64, u64)> = (0..shards as u64)
        .map(|s| {
            let lo = (total as u128 * s as u128 / shards as u128) as u64;
            let hi = (total as u128 * (s + 1) as u128 / shards as u128) as u64;
            (lo, hi)
        })
        .collect();
    let work = || {
        bounds
            .par_iter()
            .map(|&(lo, hi)| {
                let mut local = BTreeMap::new();
                en.for_each_in(lo, hi, |c, img| {
                    if let Some(k) = key(c, img) {
                        *local.entry(k).or_insert(0u64) += 1;
                    }
                });
                local
            })
            .collect::<Vec<_>>()
    };
    let parts = match rayon::ThreadPoolBuilder::new().num_threads(shards).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    let mut out = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            *out.entry(k).or_insert(0) += v;
        }
    }
    out
}

/// Nilpotency of an `n × n` matrix over `F_2` given as row bitmasks.
pub fn is_nilpotent_bits(rows: &[u64]) -> bool {
    let n = rows.len();
    let mut power = rows.to_vec();
    let mut e = 1;
    loop {
        if power.iter().all(|&r| r == 0) {
            return true;
        }
        if e >= n {
            return false;
        }
        power = square_bits(&power);
        e *= 2;
    }
}

fn square_bits(m: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|&row| {
            let mut acc = 0u64;
            let mut bits = row;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                acc ^= m[j];
                bits &= bits - 1;
            }
            acc
        })
        .collect()
}

/// Nilpotency of the `n × n` matrix stored row-major in `flat`.
pub fn is_nilpotent_flat(field: &FieldDesc, n: usize, flat: &[FieldElem]) -> bool {
    if field.is_gf2() && n <= 64 {
        let rows: Vec<u64> = (0..n)
            .map(|i| {
                (0..n).fold(0u64, |acc, j| if flat[i * n + j].is_zero() { acc } else { acc | 1 << j })
            })
            .collect();
        return is_nilpotent_bits(&rows);
    }
    crate::classical::unflatten(field, n, flat).is_nilpotent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn images_match_direct_products() {
        let f = make_field(3, 1).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 2, 0], &[0, 1, 1]]);
        let en = LinearEnumeration::new(&m);
        let mut seen = 0;
        en.for_each_in(0, en.len(), |c, img| {
            assert_eq!(m.mul_vec(c), img);
            seen += 1;
        });
        assert_eq!(seen, 27);
        let mut mid = Vec::new();
        en.for_each_in(10, 13, |c, _| mid.push(c.to_vec()));
        assert_eq!(mid[0], vec![f.from_int(1), f.from_int(0), f.from_int(1)]);
        assert_eq!(mid.len(), 3);
    }

    #[test]
    fn shard_independence() {
        let f = make_field(2, 2).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 1, 0], &[0, 1, 1]]);
        let en = LinearEnumeration::new(&m);
        let key = |_: &[FieldElem], img: &[FieldElem]| Some(img.iter().filter(|x| x.is_zero()).count());
        let one = tally(&en, 1, key);
        for s in [2, 3, 7, 64] {
            assert_eq!(tally(&en, s, key), one);
        }
        assert_eq!(one.values().sum::<u64>(), 64);
    }

    #[test]
    fn bit_nilpotency() {
        assert!(is_nilpotent_bits(&[0b10, 0]));
        assert!(!is_nilpotent_bits(&[0b10, 0b01]));
        assert!(is_nilpotent_bits(&[0b110, 0b100, 0]));
        assert!(is_nilpotent_bits(&[]));
    }
}
