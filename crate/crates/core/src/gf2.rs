//! Dense GF(2) vectors and matrices.
//!
//! Bits are packed little-endian into `u64` words, matrices row-major with
//! every row padded to a whole number of words. All indices are 0-based.
//!
//! Besides the usual arithmetic this module holds the polar transform
//! `G_n = B_n K₂^⊗m` and the two elimination routines the rest of the crate
//! leans on: [`BitMatrix::row_reduce_frozen_form`] (dynamic frozen bits) and
//! [`solve_linear_system`] (the MAP oracle).

use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on any vector length or matrix dimension.
pub const MAX_DIM: usize = 1 << 20;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

fn guard(len: usize) -> Result<()> {
    if len > MAX_DIM {
        return Err(Error::SizeGuard {
            requested: len,
            max: MAX_DIM,
        });
    }
    Ok(())
}

#[inline]
fn get_bit(words: &[u64], i: usize) -> bool {
    (words[i / WORD] >> (i % WORD)) & 1 == 1
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Index of the highest set bit, if any.
fn last_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
}

fn ones_in(words: &[u64], len: usize) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(move |(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * WORD + b)
        })
        .filter(move |&i| i < len)
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from 0/1 bytes; any nonzero byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<u8> = bits.into_iter().map(u8::from).collect();
        Self::from_bits(&bits)
    }

    /// The low `len` bits of `value`, bit 0 first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { !0 } else { (1u64 << len) - 1 };
            v.words[0] = value & mask;
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
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
        get_bit(&self.words, i)
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
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        xor_words(&mut self.words, &other.words);
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        ones_in(&self.words, self.len)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| get_bit(&self.words, i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for b in self.iter() {
            write!(f, "{}", u8::from(b))?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &b) in r.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn from_row_vectors(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(0, cols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        get_bit(self.row_words(r), c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        ones_in(self.row_words(r), self.cols)
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn push_row(&mut self, row: &BitVector) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(&row.words);
        self.rows += 1;
    }

    /// `rows[dst] ^= rows[src]`
    pub fn xor_rows(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        xor_words(b, a);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r).collect::<Vec<_>>() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let ones: Vec<usize> = self.row_ones(r).collect();
            let dst = r * out.stride;
            for k in ones {
                let src = rhs.row_words(k);
                xor_words(&mut out.data[dst..dst + out.stride], src);
            }
        }
        Ok(out)
    }

    /// `self · v` with `v` a column vector.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// `v · self` with `v` a row vector.
    pub fn vec_mul(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.cols);
        for r in v.ones() {
            xor_words(&mut out.words, self.row_words(r));
        }
        Ok(out)
    }

    /// Column `c` moves to position `perm[c]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<BitMatrix> {
        if perm.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: perm.len(),
            });
        }
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in self.row_ones(r).collect::<Vec<_>>() {
                out.set(r, perm[c], true);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            if p != rank {
                m.swap_rows(p, rank);
            }
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    m.xor_rows(rank, r);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Column index of the last nonzero entry of row `r`.
    pub fn row_last_one(&self, r: usize) -> Option<usize> {
        last_one(self.row_words(r))
    }

    /// Reduces a full-row-rank matrix so that each row's last nonzero entry
    /// sits in a distinct column and no other row touches that column.
    ///
    /// Pivot columns are eliminated from the highest index down, and the
    /// result is sorted by pivot column ascending. The row space is unchanged.
    pub fn row_reduce_frozen_form(&self) -> Result<BitMatrix> {
        let mut m = self.clone();
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; m.rows];
        for c in (0..m.cols).rev() {
            let Some(p) = (0..m.rows).find(|&r| pivot_of_row[r].is_none() && m.get(r, c)) else {
                continue;
            };
            pivot_of_row[p] = Some(c);
            for r in 0..m.rows {
                if r != p && m.get(r, c) {
                    m.xor_rows(p, r);
                }
            }
        }
        let rank = pivot_of_row.iter().filter(|p| p.is_some()).count();
        if rank < m.rows {
            return Err(Error::RankDeficient {
                rank,
                expected: m.rows,
            });
        }
        let mut order: Vec<(usize, usize)> = pivot_of_row
            .iter()
            .enumerate()
            .map(|(r, p)| (p.expect("full rank"), r))
            .collect();
        order.sort_unstable();
        let mut out = BitMatrix::zeros(0, m.cols);
        for (_, r) in order {
            out.push_row(&m.row(r));
        }
        Ok(out)
    }

    /// Keeps the rows that are independent of the rows kept before them.
    pub fn independent_rows(&self) -> BitMatrix {
        let mut basis = EchelonBasis::new(self.cols);
        let mut out = BitMatrix::zeros(0, self.cols);
        for r in 0..self.rows {
            let row = self.row(r);
            if basis.insert(&row) {
                out.push_row(&row);
            }
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Incremental row-echelon basis, used to test membership in a row space.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    // (leading column, row) with the leading column being the first set bit
    rows: Vec<(usize, BitVector)>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        EchelonBasis {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut BitVector) {
        for (lead, row) in &self.rows {
            if v.get(*lead) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    /// Returns true if `v` was independent and has been added.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = v.clone();
        self.reduce(&mut v);
        let lead = v.ones().next();
        match lead {
            None => false,
            Some(lead) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(lead) {
                        row.xor_assign(&v);
                    }
                }
                self.rows.push((lead, v));
                true
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Unique,
    Ambiguous,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Present exactly when `status` is [`SolveStatus::Unique`].
    pub solution: Option<BitVector>,
}

/// Solves `A·x = b` over GF(2).
pub fn solve_linear_system(a: &BitMatrix, b: &BitVector) -> Result<SolveOutcome> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let cols = a.cols();
    // augmented matrix, right-hand side in column `cols`
    let mut m = BitMatrix::zeros(a.rows(), cols + 1);
    for r in 0..a.rows() {
        let dst = r * m.stride;
        let src = a.row_words(r);
        m.data[dst..dst + src.len()].copy_from_slice(src);
        if b.get(r) {
            m.set(r, cols, true);
        }
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else {
            continue;
        };
        m.swap_rows(p, rank);
        for r in 0..m.rows {
            if r != rank && m.get(r, c) {
                m.xor_rows(rank, r);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    // leftover rows are 0 = rhs
    if (rank..m.rows).any(|r| m.get(r, cols)) {
        return Ok(SolveOutcome {
            status: SolveStatus::Inconsistent,
            solution: None,
        });
    }
    if rank < cols {
        return Ok(SolveOutcome {
            status: SolveStatus::Ambiguous,
            solution: None,
        });
    }
    let mut x = BitVector::zeros(cols);
    for (r, &c) in pivots.iter().enumerate() {
        if m.get(r, cols) {
            x.set(c, true);
        }
    }
    Ok(SolveOutcome {
        status: SolveStatus::Unique,
        solution: Some(x),
    })
}

pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

/// `K₂^⊗m`, lower triangular with unit diagonal.
pub fn kronecker_power(m: u32) -> Result<BitMatrix> {
    if m > 20 {
        return Err(Error::SizeGuard {
            requested: 1usize.checked_shl(m).unwrap_or(usize::MAX),
            max: MAX_DIM,
        });
    }
    let n = 1usize << m;
    let mut k = BitMatrix::zeros(n, n);
    // entry (r, c) is 1 iff the bits of c are a subset of the bits of r
    for r in 0..n {
        for c in 0..n {
            if c & !r == 0 {
                k.set(r, c, true);
            }
        }
    }
    Ok(k)
}

/// log2 of `n`, or an error if `n` is not a power of two.
pub fn log2_exact(n: usize) -> Result<u32> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    guard(n)?;
    Ok(n.trailing_zeros())
}

#[inline]
pub(crate) fn reverse_bits(i: usize, m: u32) -> usize {
    if m == 0 {
        0
    } else {
        i.reverse_bits() >> (usize::BITS - m)
    }
}

/// The bit-reversal permutation on `0..n`: entry `i` is `i` with its
/// `log2 n` bits reversed. It is an involution.
pub fn bit_reversal_permutation(n: usize) -> Result<Vec<usize>> {
    let m = log2_exact(n)?;
    Ok((0..n).map(|i| reverse_bits(i, m)).collect())
}

/// In-place `x ← x·K₂^⊗m` on a slice of 0/1 values.
pub(crate) fn kronecker_butterfly(x: &mut [u8]) {
    let n = x.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for j in block..block + h {
                x[j] ^= x[j + h];
            }
        }
        h *= 2;
    }
}

/// `u·G_n` with `G_n = B_n K₂^⊗m`, in O(n log n).
pub fn polar_transform(u: &BitVector) -> Result<BitVector> {
    let m = log2_exact(u.len())?;
    let mut x = u.to_bits();
    kronecker_butterfly(&mut x);
    let n = x.len();
    let mut out = BitVector::zeros(n);
    for j in 0..n {
        if x[reverse_bits(j, m)] == 1 {
            out.set(j, true);
        }
    }
    Ok(out)
}

/// The generator `G_n` as an explicit matrix, row `i` = `polar_transform(e_i)`.
pub fn polar_generator(n: usize) -> Result<BitMatrix> {
    log2_exact(n)?;
    let mut g = BitMatrix::zeros(0, n);
    for i in 0..n {
        g.push_row(&polar_transform(&BitVector::unit(n, i))?);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kronecker_small_powers() {
        assert_eq!(kronecker_power(0).unwrap(), BitMatrix::from_rows(&[[1u8]]));
        assert_eq!(
            kronecker_power(1).unwrap(),
            BitMatrix::from_rows(&[[1u8, 0], [1, 1]])
        );
        assert_eq!(
            kronecker_power(2).unwrap(),
            BitMatrix::from_rows(&[[1u8, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]])
        );
        assert!(matches!(kronecker_power(21), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn kronecker_power_matches_recursive_definition() {
        // K^{⊗(m+1)} = [[K^{⊗m}, 0], [K^{⊗m}, K^{⊗m}]]
        for m in 0..6 {
            let k = kronecker_power(m).unwrap();
            let k1 = kronecker_power(m + 1).unwrap();
            let h = 1 << m;
            for r in 0..2 * h {
                for c in 0..2 * h {
                    let expect = match (r < h, c < h) {
                        (true, true) => k.get(r, c),
                        (true, false) => false,
                        (false, true) => k.get(r - h, c),
                        (false, false) => k.get(r - h, c - h),
                    };
                    assert_eq!(k1.get(r, c), expect);
                }
            }
        }
    }

    #[test]
    fn bit_reversal_examples() {
        assert_eq!(bit_reversal_permutation(1).unwrap(), vec![0]);
        assert_eq!(bit_reversal_permutation(2).unwrap(), vec![0, 1]);
        assert_eq!(bit_reversal_permutation(4).unwrap(), vec![0, 2, 1, 3]);
        assert_eq!(
            bit_reversal_permutation(8).unwrap(),
            vec![0, 4, 2, 6, 1, 5, 3, 7]
        );
        assert_eq!(bit_reversal_permutation(6), Err(Error::NotPowerOfTwo(6)));
        assert_eq!(bit_reversal_permutation(0), Err(Error::NotPowerOfTwo(0)));
    }

    #[test]
    fn bit_reversal_is_involution() {
        for m in 0..11 {
            let p = bit_reversal_permutation(1 << m).unwrap();
            for (i, &j) in p.iter().enumerate() {
                assert_eq!(p[j], i);
            }
        }
    }

    #[test]
    fn polar_transform_examples() {
        let t = |bits: &[u8]| polar_transform(&BitVector::from_bits(bits)).unwrap().to_bits();
        assert_eq!(t(&[0, 0, 0, 0]), vec![0, 0, 0, 0]);
        assert_eq!(t(&[1, 0, 0, 0]), vec![1, 0, 0, 0]);
        assert_eq!(t(&[0, 1, 0, 0]), vec![1, 0, 1, 0]);
        assert!(polar_transform(&BitVector::zeros(3)).is_err());
    }

    #[test]
    fn polar_generator_is_bit_reversed_kronecker() {
        // G_n = B_n K^⊗m: row i of G_n is row rev(i) of K^⊗m
        for m in 0..7u32 {
            let n = 1 << m;
            let k = kronecker_power(m).unwrap();
            let g = polar_generator(n).unwrap();
            let rev = bit_reversal_permutation(n).unwrap();
            for i in 0..n {
                assert_eq!(g.row(i), k.row(rev[i]));
            }
        }
    }

    #[test]
    fn polar_generator_full_rank() {
        for m in 0..=10u32 {
            assert_eq!(polar_generator(1 << m).unwrap().rank(), 1 << m);
        }
    }

    #[test]
    fn generator_squares_to_identity() {
        for m in 0..7 {
            let n = 1 << m;
            let g = polar_generator(n).unwrap();
            assert_eq!(g.mul(&g).unwrap(), BitMatrix::identity(n));
        }
    }

    #[test]
    fn frozen_form_examples() {
        let id = BitMatrix::identity(3);
        assert_eq!(id.row_reduce_frozen_form().unwrap(), id);

        // column 2 is the pivot of the first row, so it is cleared from the second
        let v = BitMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1]]);
        assert_eq!(
            v.row_reduce_frozen_form().unwrap(),
            BitMatrix::from_rows(&[[1u8, 1, 0], [1, 0, 1]])
        );

        let v = BitMatrix::from_rows(&[[1u8, 0, 1], [0, 0, 1]]);
        assert_eq!(
            v.row_reduce_frozen_form().unwrap(),
            BitMatrix::from_rows(&[[1u8, 0, 0], [0, 0, 1]])
        );

        let deficient = BitMatrix::from_rows(&[[1u8, 1, 0], [1, 1, 0]]);
        assert!(matches!(
            deficient.row_reduce_frozen_form(),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        ));
    }

    #[test]
    fn solve_examples() {
        let s = solve_linear_system(&BitMatrix::from_rows(&[[1u8]]), &BitVector::from_bits(&[1]))
            .unwrap();
        assert_eq!(s.status, SolveStatus::Unique);
        assert_eq!(s.solution.unwrap().to_bits(), vec![1]);

        let s = solve_linear_system(&BitMatrix::from_rows(&[[1u8, 1]]), &BitVector::from_bits(&[0]))
            .unwrap();
        assert_eq!(s.status, SolveStatus::Ambiguous);
        assert!(s.solution.is_none());

        let s = solve_linear_system(
            &BitMatrix::from_rows(&[[1u8, 0], [1, 0]]),
            &BitVector::from_bits(&[0, 1]),
        )
        .unwrap();
        assert_eq!(s.status, SolveStatus::Inconsistent);

        assert!(solve_linear_system(&BitMatrix::zeros(2, 2), &BitVector::zeros(3)).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&BitMatrix::zeros(2, 2)), 0);
        assert_eq!(rank(&BitMatrix::identity(3)), 3);
        assert_eq!(rank(&BitMatrix::from_rows(&[[1u8, 1], [1, 1]])), 1);
    }

    #[test]
    fn vector_basics() {
        let mut v = BitVector::from_bits(&[1, 0, 1, 1]);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 2, 3]);
        v.flip(0);
        assert_eq!(v.to_bits(), vec![0, 0, 1, 1]);
        assert!(v.dot(&BitVector::from_bits(&[1, 1, 1, 0])));
        let long = BitVector::unit(200, 130);
        assert_eq!(long.ones().collect::<Vec<_>>(), vec![130]);
    }

    fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(0u8..2, c), r)
                .prop_map(|rows| BitMatrix::from_rows(&rows))
        })
    }

    // exhaustive search over all candidate vectors
    fn brute_force_solve(a: &BitMatrix, b: &BitVector) -> (usize, Option<BitVector>) {
        let cols = a.cols();
        let mut count = 0;
        let mut last = None;
        for x in 0..(1u64 << cols) {
            let xv = BitVector::from_u64(x, cols);
            if a.mul_vec(&xv).unwrap() == *b {
                count += 1;
                last = Some(xv);
            }
        }
        (count, last)
    }

    proptest! {
        #[test]
        fn polar_transform_is_involution(bits in prop::collection::vec(0u8..2, 1usize..=1024)
            .prop_filter("power of two", |v| v.len().is_power_of_two())) {
            let u = BitVector::from_bits(&bits);
            let c = polar_transform(&u).unwrap();
            prop_assert_eq!(polar_transform(&c).unwrap(), u);
        }

        #[test]
        fn solve_agrees_with_exhaustive_search(
            a in matrix_strategy(8, 12),
            seed in any::<u64>(),
        ) {
            let b = BitVector::from_u64(seed, a.rows());
            let (count, sol) = brute_force_solve(&a, &b);
            let out = solve_linear_system(&a, &b).unwrap();
            match count {
                0 => prop_assert_eq!(out.status, SolveStatus::Inconsistent),
                1 => {
                    prop_assert_eq!(out.status, SolveStatus::Unique);
                    prop_assert_eq!(out.solution, sol);
                }
                _ => prop_assert_eq!(out.status, SolveStatus::Ambiguous),
            }
        }

        #[test]
        fn frozen_form_preserves_row_space(a in matrix_strategy(8, 16)) {
            let a = a.independent_rows();
            prop_assume!(a.rows() > 0);
            let v = a.row_reduce_frozen_form().unwrap();
            prop_assert_eq!(v.rows(), a.rows());
            let mut span_a = EchelonBasis::new(a.cols());
            let mut span_v = EchelonBasis::new(a.cols());
            for r in 0..a.rows() {
                span_a.insert(&a.row(r));
                span_v.insert(&v.row(r));
            }
            for r in 0..a.rows() {
                prop_assert!(span_a.contains(&v.row(r)));
                prop_assert!(span_v.contains(&a.row(r)));
            }
            let pivots: Vec<usize> = (0..v.rows()).map(|r| v.row_last_one(r).unwrap()).collect();
            for w in pivots.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            // no other row touches a pivot column
            for (r, &p) in pivots.iter().enumerate() {
                for r2 in 0..v.rows() {
                    prop_assert_eq!(v.get(r2, p), r2 == r);
                }
            }
        }

        #[test]
        fn rank_bounded_and_matches_basis(a in matrix_strategy(10, 10)) {
            let r = a.rank();
            prop_assert!(r <= a.rows().min(a.cols()));
            prop_assert_eq!(r, a.independent_rows().rows());
            prop_assert_eq!(a.transpose().rank(), r);
        }
    }
}
