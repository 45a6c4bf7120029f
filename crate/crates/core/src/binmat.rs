//! Bit-packed vectors and matrices over F_2.
//!
//! Bit `i` of a vector (or of a matrix row) lives in word `i / 64`, bit
//! `i % 64`. Padding bits beyond the logical length are always zero.
//! Vectors are row vectors: `v.mul_mat(&a)` is `v · A`.

use std::fmt;

use crate::drbg::Drbg;
use crate::error::{check_dim, Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector { len, words: vec![!0; words_for(len)] };
        v.clear_padding();
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    fn clear_padding(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVector) -> Result<()> {
        check_dim(self.len, other.len)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    /// Inner product over F_2.
    pub fn dot(&self, other: &BitVector) -> Result<bool> {
        check_dim(self.len, other.len)?;
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        Ok(ones % 2 == 1)
    }

    /// `self · a`: XOR of the rows of `a` selected by the set bits of `self`.
    pub fn mul_mat(&self, a: &BinaryMatrix) -> Result<BitVector> {
        check_dim(a.rows, self.len)?;
        let mut out = BitVector::zeros(a.cols);
        for r in self.iter_ones() {
            for (o, w) in out.words.iter_mut().zip(a.row_words(r)) {
                *o ^= w;
            }
        }
        Ok(out)
    }

    /// `self · aᵀ`: bit `r` is the inner product of `self` with row `r`.
    pub fn mul_mat_transpose(&self, a: &BinaryMatrix) -> Result<BitVector> {
        check_dim(a.cols, self.len)?;
        let mut out = BitVector::zeros(a.rows);
        for r in 0..a.rows {
            let ones: u32 = self.words.iter().zip(a.row_words(r)).map(|(x, y)| (x & y).count_ones()).sum();
            out.set(r, ones % 2 == 1);
        }
        Ok(out)
    }

    /// Bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        let mut out = BitVector::zeros(len);
        for i in self.iter_ones().filter(|&i| i >= start && i < start + len) {
            out.set(i - start, true);
        }
        out
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Cyclic rotation towards higher indices: bit `j` moves to `(j + by) mod len`.
    pub fn rotate_right(&self, by: usize) -> BitVector {
        let mut out = BitVector::zeros(self.len);
        if self.len == 0 {
            return out;
        }
        for j in self.iter_ones() {
            out.set((j + by) % self.len, true);
        }
        out
    }

    /// Packs bit 0 into the most significant bit of byte 0; the last byte is
    /// zero-padded.
    pub fn to_bytes_msb(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for i in self.iter_ones() {
            out[i / 8] |= 0x80 >> (i % 8);
        }
        out
    }

    /// Inverse of [`to_bytes_msb`](Self::to_bytes_msb). Fails on a length
    /// mismatch or nonzero padding bits.
    pub fn from_bytes_msb(bytes: &[u8], len: usize) -> Result<BitVector> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Format(format!(
                "expected {} bytes for {len} bits, got {}",
                len.div_ceil(8),
                bytes.len()
            )));
        }
        let mut v = BitVector::zeros(len);
        for (bi, &byte) in bytes.iter().enumerate() {
            for k in 0..8 {
                if byte & (0x80 >> k) != 0 {
                    let i = bi * 8 + k;
                    if i >= len {
                        return Err(Error::Format("nonzero padding bits".into()));
                    }
                    v.set(i, true);
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-major bit-packed matrix over F_2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BinaryMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            check_dim(cols, r.len())?;
            m.row_words_mut(i).copy_from_slice(&r.words);
        }
        Ok(m)
    }

    /// Builds a matrix from `0`/`1` literals; handy in tests.
    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b != 0);
            }
        }
        m
    }

    pub fn random(rows: usize, cols: usize, rng: &mut Drbg) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for (j, b) in rng.bits(cols).into_iter().enumerate() {
                m.set(i, j, b);
            }
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
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if b {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector { len: self.cols, words: self.row_words(r).to_vec() }
    }

    pub fn set_row(&mut self, r: usize, v: &BitVector) -> Result<()> {
        check_dim(self.cols, v.len())?;
        self.row_words_mut(r).copy_from_slice(&v.words);
        Ok(())
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            v.set(r, self.get(r, c));
        }
        v
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        if src == dst {
            self.row_words_mut(dst).fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Entry-wise XOR.
    pub fn add(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect();
        Ok(BinaryMatrix { data, ..*self })
    }

    /// Matrix product: row `i` of the result is the XOR of the rows of
    /// `other` selected by row `i` of `self`.
    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        check_dim(self.cols, other.rows)?;
        let mut out = BinaryMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            let dst = i * out.stride;
            for k in row.iter_ones() {
                let src = other.row_words(k);
                for (d, s) in out.data[dst..dst + out.stride].iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }

    /// Submatrix of rows `[r0, r0 + nr)` and columns `[c0, c0 + nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> BinaryMatrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols);
        let mut out = BinaryMatrix::zeros(nr, nc);
        for r in 0..nr {
            let row = self.row(r0 + r).slice(c0, nc);
            out.row_words_mut(r).copy_from_slice(&row.words);
        }
        out
    }

    /// Columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        check_dim(self.cols, other.cols)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BinaryMatrix { rows: self.rows + other.rows, data, ..*self })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        check_dim(self.rows, other.rows)?;
        let mut out = BinaryMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            let row = self.row(r).concat(&other.row(r));
            out.row_words_mut(r).copy_from_slice(&row.words);
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot column of each
    /// leading row. Only the first `limit` columns are eligible as pivots.
    pub(crate) fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(p, r);
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
        // Eliminating the shorter side is cheaper; rank is transpose-invariant.
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        let cols = m.cols;
        m.rref_in_place(cols).len()
    }

    /// Gauss-Jordan inverse.
    pub fn invert(&self) -> Result<BinaryMatrix> {
        check_dim(self.rows, self.cols)?;
        let n = self.rows;
        let mut aug = self.hstack(&BinaryMatrix::identity(n))?;
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(aug.block(0, n, n, n))
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// A permutation of `[0, n)` stored as an index map.
///
/// The associated permutation matrix `P` has a one at `(i, map[i])`. The
/// forward application computes `v · Pᵀ`, i.e. `out[j] = v[map[j]]`; the
/// inverse application computes `v · P`, i.e. `out[map[j]] = v[j]`. Every
/// caller goes through [`Permutation::apply`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            if i >= map.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Format(format!("{map:?} is not a permutation")));
            }
        }
        Ok(Permutation { map })
    }

    /// Fisher-Yates shuffle of `[0, n)`.
    pub fn random(n: usize, rng: &mut Drbg) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut map);
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (j, &i) in self.map.iter().enumerate() {
            inv[i] = j;
        }
        Permutation { map: inv }
    }

    /// `v · Pᵀ` when `inverse` is false, `v · P = v · (Pᵀ)⁻¹` otherwise.
    pub fn apply(&self, v: &BitVector, inverse: bool) -> Result<BitVector> {
        check_dim(self.map.len(), v.len())?;
        let mut out = BitVector::zeros(v.len());
        for (j, &i) in self.map.iter().enumerate() {
            if inverse {
                out.set(i, v.get(j));
            } else {
                out.set(j, v.get(i));
            }
        }
        Ok(out)
    }

    /// `A · P`: column `map[j]` of the result is column `j` of `a`, so that
    /// row `r` of the result is `apply(row r, inverse = true)`.
    pub fn permute_columns(&self, a: &BinaryMatrix) -> Result<BinaryMatrix> {
        check_dim(self.map.len(), a.cols())?;
        let mut cols = vec![0; self.map.len()];
        for (j, &i) in self.map.iter().enumerate() {
            cols[i] = j;
        }
        Ok(a.select_columns(&cols))
    }

    pub fn to_matrix(&self) -> BinaryMatrix {
        let mut p = BinaryMatrix::zeros(self.map.len(), self.map.len());
        for (i, &j) in self.map.iter().enumerate() {
            p.set(i, j, true);
        }
        p
    }
}

/// An invertible square matrix together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scrambler {
    s: BinaryMatrix,
    s_inv: BinaryMatrix,
}

impl Scrambler {
    pub fn new(s: BinaryMatrix) -> Result<Self> {
        let s_inv = s.invert()?;
        Ok(Scrambler { s, s_inv })
    }

    /// Uniform invertible `dim x dim` matrix, resampling singular draws.
    pub fn random(dim: usize, rng: &mut Drbg) -> Self {
        assert!(dim >= 1);
        loop {
            if let Ok(s) = Scrambler::new(BinaryMatrix::random(dim, dim, rng)) {
                return s;
            }
        }
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.s
    }

    pub fn inverse(&self) -> &BinaryMatrix {
        &self.s_inv
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drbg::Seed;

    fn naive_mul(a: &BinaryMatrix, b: &BinaryMatrix) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = false;
                for k in 0..a.cols() {
                    acc ^= a.get(i, k) & b.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    #[test]
    fn mul_examples() {
        let mut rng = Drbg::new(&Seed::from(10));
        let a = BinaryMatrix::random(3, 5, &mut rng);
        assert_eq!(BinaryMatrix::identity(3).mul(&a).unwrap(), a);
        let u = BinaryMatrix::from_bits(&[&[1, 1], &[0, 1]]);
        let ones = BinaryMatrix::from_bits(&[&[1], &[1]]);
        assert_eq!(u.mul(&ones).unwrap(), BinaryMatrix::from_bits(&[&[0], &[1]]));
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn mul_matches_naive_oracle() {
        let mut rng = Drbg::new(&Seed::from(11));
        for _ in 0..1000 {
            let (r, k, c) = (1 + rng.below(12) as usize, 1 + rng.below(12) as usize, 1 + rng.below(12) as usize);
            let a = BinaryMatrix::random(r, k, &mut rng);
            let b = BinaryMatrix::random(k, c, &mut rng);
            assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
        }
        // Cross word boundaries too.
        let a = BinaryMatrix::random(70, 130, &mut rng);
        let b = BinaryMatrix::random(130, 65, &mut rng);
        assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
    }

    #[test]
    fn add_examples() {
        let mut rng = Drbg::new(&Seed::from(12));
        let a = BinaryMatrix::random(4, 9, &mut rng);
        assert!(a.add(&a).unwrap().is_zero());
        assert_eq!(a.add(&BinaryMatrix::zeros(4, 9)).unwrap(), a);
        assert!(a.add(&BinaryMatrix::zeros(9, 4)).is_err());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(BinaryMatrix::identity(5).invert().unwrap(), BinaryMatrix::identity(5));
        let u = BinaryMatrix::from_bits(&[&[1, 1], &[0, 1]]);
        assert_eq!(u.invert().unwrap(), u);
        assert_eq!(BinaryMatrix::from_bits(&[&[1, 1], &[1, 1]]).invert(), Err(Error::Singular));
        assert!(BinaryMatrix::zeros(2, 3).invert().is_err());

        let mut rng = Drbg::new(&Seed::from(13));
        let mut ok = 0;
        for _ in 0..200 {
            let a = BinaryMatrix::random(16, 16, &mut rng);
            match a.invert() {
                Ok(b) => {
                    assert!(a.mul(&b).unwrap().is_identity());
                    assert!(b.mul(&a).unwrap().is_identity());
                    ok += 1;
                }
                Err(e) => {
                    assert_eq!(e, Error::Singular);
                    assert!(a.rank() < 16);
                }
            }
        }
        assert!(ok > 0);
    }

    #[test]
    fn rank_examples_and_subadditivity() {
        assert_eq!(BinaryMatrix::zeros(5, 7).rank(), 0);
        assert_eq!(BinaryMatrix::identity(9).rank(), 9);
        let mut rng = Drbg::new(&Seed::from(14));
        for _ in 0..1000 {
            let r = 1 + rng.below(10) as usize;
            let c = 1 + rng.below(10) as usize;
            // Low-rank factors make the inequality non-trivial.
            let k = rng.below(4) as usize + 1;
            let a = BinaryMatrix::random(r, k, &mut rng).mul(&BinaryMatrix::random(k, c, &mut rng)).unwrap();
            let b = BinaryMatrix::random(r, c, &mut rng);
            let sum = a.add(&b).unwrap();
            assert!(sum.rank() <= a.rank() + b.rank());
            assert_eq!(a.rank(), a.transpose().rank());
        }
    }

    #[test]
    fn random_invertible_fixtures() {
        let mut rng = Drbg::new(&Seed::from(0));
        assert_eq!(Scrambler::random(1, &mut rng).matrix(), &BinaryMatrix::identity(1));

        let mut rng = Drbg::new(&Seed::from(8));
        let s = Scrambler::random(8, &mut rng);
        assert_eq!(s.matrix().rank(), 8);
        assert!(s.matrix().mul(s.inverse()).unwrap().is_identity());
        let rows: Vec<String> = (0..8).map(|r| s.matrix().row(r).to_string()).collect();
        assert_eq!(rows, FIXTURE_SCRAMBLER_8);
    }

    const FIXTURE_SCRAMBLER_8: [&str; 8] =
        ["01110110", "01111101", "00001100", "11011001", "00011100", "01111011", "10110001", "10011101"];

    #[test]
    fn permutation_convention() {
        let p = Permutation::from_map(vec![2, 0, 1]).unwrap();
        let v = BitVector::from_bools(&[true, false, false]);
        // out[j] = v[map[j]]: out = (v2, v0, v1) = (0, 1, 0).
        let fwd = p.apply(&v, false).unwrap();
        assert_eq!(fwd.to_string(), "010");
        assert_eq!(p.apply(&fwd, true).unwrap(), v);
        // Agrees with the explicit matrix: v · Pᵀ.
        let vm = BinaryMatrix::from_rows(std::slice::from_ref(&v)).unwrap();
        let expect = vm.mul(&p.to_matrix().transpose()).unwrap().row(0);
        assert_eq!(fwd, expect);

        let id = Permutation::identity(5);
        let w = BitVector::from_bools(&[true, true, false, true, false]);
        assert_eq!(id.apply(&w, false).unwrap(), w);
        assert!(p.apply(&w, false).is_err());
        assert!(Permutation::from_map(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn random_permutation_fixtures() {
        let mut rng = Drbg::new(&Seed::from(1));
        assert_eq!(Permutation::random(1, &mut rng).map(), &[0]);
        let mut rng = Drbg::new(&Seed::from(16));
        let p = Permutation::random(16, &mut rng);
        let mut sorted = p.map().to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..16).collect::<Vec<_>>());
        assert_eq!(p.map(), FIXTURE_PERM_16);
    }

    const FIXTURE_PERM_16: [usize; 16] = [14, 7, 2, 12, 13, 8, 10, 6, 11, 4, 1, 5, 3, 0, 9, 15];

    #[test]
    fn permutation_matrices_are_orthogonal() {
        let mut rng = Drbg::new(&Seed::from(17));
        for n in [1, 5, 64, 100] {
            let p = Permutation::random(n, &mut rng);
            let pm = p.to_matrix();
            assert!(pm.mul(&pm.transpose()).unwrap().is_identity());
            let v = BitVector::from_bools(&rng.bits(n));
            assert_eq!(p.apply(&p.apply(&v, false).unwrap(), true).unwrap(), v);
            let a = BinaryMatrix::random(3, n, &mut rng);
            assert_eq!(p.permute_columns(&a).unwrap(), a.mul(&pm).unwrap());
        }
    }

    #[test]
    fn vector_ops() {
        let v = BitVector::from_support(70, &[0, 3, 64, 69]);
        assert_eq!(v.weight(), 4);
        assert_eq!(v.support(), vec![0, 3, 64, 69]);
        assert_eq!(v.rotate_right(1).support(), vec![0, 1, 4, 65]);
        let bytes = v.to_bytes_msb();
        assert_eq!(bytes.len(), 9);
        assert_eq!(bytes[0], 0b1001_0000);
        assert_eq!(BitVector::from_bytes_msb(&bytes, 70).unwrap(), v);
        let mut bad = bytes.clone();
        bad[8] |= 1;
        assert!(BitVector::from_bytes_msb(&bad, 70).is_err());
        assert!(BitVector::from_bytes_msb(&bytes[..8], 70).is_err());
        assert_eq!(BitVector::ones(70).weight(), 70);
    }

    #[test]
    fn vector_matrix_products() {
        let mut rng = Drbg::new(&Seed::from(18));
        for _ in 0..100 {
            let a = BinaryMatrix::random(9, 70, &mut rng);
            let v = BitVector::from_bools(&rng.bits(9));
            let vm = BinaryMatrix::from_rows(std::slice::from_ref(&v)).unwrap();
            assert_eq!(v.mul_mat(&a).unwrap(), vm.mul(&a).unwrap().row(0));
            let w = BitVector::from_bools(&rng.bits(70));
            let wm = BinaryMatrix::from_rows(std::slice::from_ref(&w)).unwrap();
            assert_eq!(w.mul_mat_transpose(&a).unwrap(), wm.mul(&a.transpose()).unwrap().row(0));
        }
    }
}
