//! Packed binary vectors and the handful of GF(2) row operations the code
//! constructions need: rank, reduced echelon form, kernels and row-space
//! membership.

use std::fmt;

const WORD: usize = 64;

/// A vector over F_2 stored as packed 64-bit words, bit `i` of word `i / 64`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = !0;
        }
        v.clear_tail();
        v
    }

    /// Builds a vector from the indices of its nonzero positions.
    ///
    /// Panics if an index is out of range.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.flip(i);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        Self::from_support(len, &[i])
    }

    /// Parses a string of `0`/`1` characters, leftmost character is position 0.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let s = s.trim();
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over F_2.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Indices of the nonzero positions in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    /// First nonzero position, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + w.trailing_zeros() as usize)
    }

    /// Vector with `bit` prepended at position 0 and every other position shifted by one.
    pub fn prepend(&self, bit: bool) -> BitVec {
        let mut out = BitVec::zeros(self.len + 1);
        out.set(0, bit);
        for i in self.iter_ones() {
            out.set(i + 1, true);
        }
        out
    }

    /// Drops position 0.
    pub fn puncture_first(&self) -> BitVec {
        assert!(self.len > 0);
        let mut out = BitVec::zeros(self.len - 1);
        for i in self.iter_ones().filter(|&i| i > 0) {
            out.set(i - 1, true);
        }
        out
    }

    /// Cyclic shift: the bit at position `i` moves to `(i + 1) mod len`.
    pub fn cyclic_shift(&self) -> BitVec {
        let mut out = BitVec::zeros(self.len);
        for i in self.iter_ones() {
            out.set((i + 1) % self.len, true);
        }
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Rank over F_2 of a set of equal-length vectors.
pub fn rank(rows: &[BitVec]) -> usize {
    Echelon::new(rows.to_vec()).rank()
}

/// Row-echelon basis with the pivot column of each row; supports reduction
/// of arbitrary vectors against the basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Reduces `rows` to reduced row echelon form, dropping dependent rows.
    pub fn new(rows: Vec<BitVec>) -> Self {
        let mut ech = Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for r in rows {
            ech.insert(r);
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the basis. Returns false if it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }
}

/// Basis of the kernel `{x : row · x = 0 for every row}` of length-`ncols` vectors.
pub fn kernel(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let ech = Echelon::new(rows.to_vec());
    let pivot_set: std::collections::HashSet<usize> = ech.pivots().iter().copied().collect();
    let mut basis = Vec::with_capacity(ncols - ech.rank());
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut x = BitVec::zeros(ncols);
        x.set(free, true);
        for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
            if row.get(free) {
                x.set(p, true);
            }
        }
        basis.push(x);
    }
    basis
}

/// Expresses `target` as a combination of `rows`, returning the coefficient
/// vector (length `rows.len()`), or `None` if `target` is outside the row space.
pub fn solve_in_row_space(rows: &[BitVec], target: &BitVec) -> Option<BitVec> {
    // Augment each row with an identity tag to track combinations.
    let k = rows.len();
    let n = target.len();
    let augmented: Vec<BitVec> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = BitVec::zeros(n + k);
            for j in r.iter_ones() {
                a.set(j, true);
            }
            a.set(n + i, true);
            a
        })
        .collect();
    let ech = Echelon::new(augmented);
    let mut t = BitVec::zeros(n + k);
    for j in target.iter_ones() {
        t.set(j, true);
    }
    let r = ech.reduce(&t);
    if (0..n).any(|j| r.get(j)) {
        return None;
    }
    let mut coeffs = BitVec::zeros(k);
    for i in 0..k {
        if r.get(n + i) {
            coeffs.set(i, true);
        }
    }
    Some(coeffs)
}
