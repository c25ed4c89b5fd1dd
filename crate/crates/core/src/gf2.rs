//! Dense bit vectors over GF(2) and row reduction.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(len: usize, bits: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for b in bits {
            v.flip(b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_parity(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Reduced row echelon form; zero rows are dropped.
pub fn rref(rows: &[BitVec]) -> Vec<BitVec> {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut m: Vec<BitVec> = rows.to_vec();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| m[r].get(col)) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

pub fn rank(rows: &[BitVec]) -> usize {
    rref(rows).len()
}

/// Is `v` in the row space of the reduced matrix `basis`?
pub fn in_span(basis: &[BitVec], v: &BitVec) -> bool {
    reduce(basis, v).is_zero()
}

/// Reduce `v` against an RREF basis.
pub fn reduce(basis: &[BitVec], v: &BitVec) -> BitVec {
    let mut r = v.clone();
    for row in basis {
        if let Some(p) = row.first_one() {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
    }
    r
}

/// Basis of the null space {x : row . x = 0 for every row}.
pub fn kernel(rows: &[BitVec], width: usize) -> Vec<BitVec> {
    let red = rref(rows);
    let pivots: Vec<usize> = red.iter().filter_map(|r| r.first_one()).collect();
    let mut out = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = BitVec::zeros(width);
        v.flip(free);
        for (row, &p) in red.iter().zip(&pivots) {
            if row.get(free) {
                v.flip(p);
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_orthogonal_and_complete() {
        let rows = vec![
            BitVec::from_bits(5, [0, 1, 3]),
            BitVec::from_bits(5, [1, 2]),
            BitVec::from_bits(5, [0, 2, 3]),
        ];
        let k = kernel(&rows, 5);
        assert_eq!(k.len(), 5 - rank(&rows));
        for v in &k {
            for r in &rows {
                assert!(!r.and_parity(v));
            }
        }
    }

    #[test]
    fn rref_is_canonical() {
        let a = vec![BitVec::from_bits(4, [0, 1]), BitVec::from_bits(4, [1, 2])];
        let b = vec![BitVec::from_bits(4, [0, 2]), BitVec::from_bits(4, [0, 1])];
        assert_eq!(rref(&a), rref(&b));
    }
}
