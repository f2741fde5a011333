//! Bit-packed matrices over `F_2`: each row is a run of `u64` words and row
//! operations are word-wide XORs.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        for k in 0..w {
            let v = self.data[src * w + k];
            self.data[dst * w + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(pr, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let w = other.words;
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for t in 0..w {
                        out.data[i * w + t] ^= other.data[k * w + t];
                    }
                }
            }
        }
        out
    }

    /// `M^n = 0` for an `n × n` matrix.
    pub fn is_nilpotent(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return true;
        }
        // Repeated squaring up to an exponent ≥ n.
        let mut power = self.clone();
        let mut e = 1;
        while e < n {
            power = power.mul(&power);
            e *= 2;
            if power.is_zero() {
                return true;
            }
        }
        power.is_zero()
    }

    /// Basis of the right kernel `{x : M x = 0}` as rows.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let mut r = self.clone();
        let pivots = r.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![false; self.cols];
                v[fc] = true;
                for (ri, &pc) in pivots.iter().enumerate() {
                    if r.get(ri, fc) {
                        v[pc] = true;
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_shift() {
        assert_eq!(BitMatrix::identity(70).rank(), 70);
        let mut shift = BitMatrix::zeros(2, 2);
        shift.set(0, 1, true);
        assert_eq!(shift.rank(), 1);
        assert!(shift.is_nilpotent());
        assert!(!BitMatrix::identity(3).is_nilpotent());
        assert_eq!(shift.kernel(), vec![vec![true, false]]);
    }
}
