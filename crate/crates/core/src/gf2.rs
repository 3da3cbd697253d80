//! Dense linear algebra over GF(2).
//!
//! Vectors and matrices are bit-packed into `u64` words. Only logical bit
//! indices are exposed; the packing is an internal detail.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default enumeration limit for brute-force searches over a span.
pub const DEFAULT_CAP: u64 = 1 << 26;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
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

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    /// Parses a string of `'0'`/`'1'` characters.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::parse(1, format!("unexpected character {other:?}"))),
            }
        }
        Ok(v)
    }

    /// Builds a vector from the low `len` bits of `value` (bit `i` of the
    /// integer becomes entry `i`).
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1 << len) - 1 };
            v.words[0] = value & mask;
        }
        v
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
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    /// Concatenation `self ‖ other`.
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

    /// Bits `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        assert!(start <= end && end <= self.len);
        let mut out = BitVector::zeros(end - start);
        for i in self.iter_ones().filter(|&i| i >= start && i < end) {
            out.set(i - start, true);
        }
        out
    }

    /// Entries at the given positions, in order.
    pub fn select(&self, positions: &[usize]) -> BitVector {
        let mut out = BitVector::zeros(positions.len());
        for (k, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(k, true);
            }
        }
        out
    }

    /// Low 64 bits as an integer (bit `i` = entry `i`).
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD, "vector too long for u64");
        self.words.first().copied().unwrap_or(0)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        BitVector { len, words }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A dense `rows × cols` matrix over GF(2), stored row by row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::ones(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from row vectors, checking that widths agree.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Builds a matrix from nested 0/1 literals. Panics on ragged input.
    pub fn from_rows_u8(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                BitVector::from_indices(cols, r.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i))
            })
            .collect();
        BitMatrix { cols, rows }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(&self.rows.iter().map(|r| r.get(c)).collect::<Vec<_>>())
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.rows.iter().map(BitVector::weight).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.num_rows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.num_rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            cols: other.cols,
            rows,
        })
    }

    /// `A · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVector::from_bools(
            &self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>(),
        ))
    }

    /// `v · A` for a row vector `v`.
    pub fn vec_mul(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                found: v.len(),
            });
        }
        let mut acc = BitVector::zeros(self.cols);
        for k in v.iter_ones() {
            acc.xor_assign(&self.rows[k]);
        }
        Ok(acc)
    }

    /// Reduced row echelon form.
    ///
    /// Pivots are chosen leftmost-first; within a column the first
    /// remaining row with a one is swapped up. Zero rows are dropped, so the
    /// result is the canonical basis of the row space. Returns the reduced
    /// matrix and the pivot column of each of its rows.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            if top == rows.len() {
                break;
            }
            let Some(found) = (top..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(top, found);
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != top && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            top += 1;
        }
        rows.truncate(top);
        (BitMatrix { cols: self.cols, rows }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : A·v = 0}`, one vector per free
    /// column in increasing column order.
    pub fn kernel(&self) -> Vec<BitVector> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::unit(self.cols, f);
                for (row, &p) in reduced.rows.iter().zip(&pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.rows.len();
        if n != self.cols {
            return None;
        }
        let augmented: Vec<BitVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVector::unit(n, i)))
            .collect();
        let (reduced, pivots) = BitMatrix {
            cols: 2 * n,
            rows: augmented,
        }
        .rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(BitMatrix {
            cols: n,
            rows: reduced.rows.iter().map(|r| r.slice(n, 2 * n)).collect(),
        })
    }

    /// Indices of the first linearly independent rows, chosen greedily in
    /// index order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis = SpanBuilder::new(self.cols);
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| basis.insert(r).then_some(i))
            .collect()
    }

    /// Canonical basis of the row space.
    pub fn row_space(&self) -> Vec<BitVector> {
        self.rref().0.into_rows()
    }

    /// Canonical basis of the column space.
    pub fn column_space(&self) -> Vec<BitVector> {
        self.transpose().row_space()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    /// Matrix text format: optional `#` comment lines, then one line per row
    /// of `0`/`1` characters. All rows must have equal length.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            let trimmed = line.trim();
            if trimmed.starts_with('#') || trimmed.is_empty() {
                continue;
            }
            let row = BitVector::from_bit_str(trimmed).map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(lineno + 1, message),
                other => other,
            })?;
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(Error::parse(
                        lineno + 1,
                        format!("ragged row: expected {w} columns, found {}", row.len()),
                    ))
                }
                _ => {}
            }
            rows.push(row);
        }
        Ok(BitMatrix {
            cols: width.unwrap_or(0),
            rows,
        })
    }
}

/// Incrementally maintained reduced basis used for independence tests.
#[derive(Clone, Debug)]
pub(crate) struct SpanBuilder {
    len: usize,
    rows: Vec<(usize, BitVector)>,
}

impl SpanBuilder {
    pub(crate) fn new(len: usize) -> Self {
        SpanBuilder { len, rows: Vec::new() }
    }

    fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Adds `v` if it is independent of the current span; returns whether it
    /// was added.
    pub(crate) fn insert(&mut self, v: &BitVector) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        match r.first_one() {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

/// Solves `Σ c_i · basis_i = v`.
///
/// Returns the coefficient vector (one entry per basis vector), or `None`
/// when `v` lies outside the span. The basis must be independent.
pub fn membership(basis: &[BitVector], v: &BitVector) -> Option<BitVector> {
    let k = basis.len();
    if k == 0 {
        return v.is_zero().then(|| BitVector::zeros(0));
    }
    let len = v.len();
    // Each working row carries its combination in the trailing k bits.
    let mut rows: Vec<(usize, BitVector)> = Vec::with_capacity(k);
    for (i, b) in basis.iter().enumerate() {
        assert_eq!(b.len(), len, "basis vectors must share a length");
        let mut r = b.concat(&BitVector::unit(k, i));
        for (p, row) in &rows {
            if r.get(*p) {
                r.xor_assign(row);
            }
        }
        let p = (0..len).find(|&j| r.get(j))?;
        rows.push((p, r));
    }
    let mut target = v.concat(&BitVector::zeros(k));
    for (p, row) in &rows {
        if target.get(*p) {
            target.xor_assign(row);
        }
    }
    if (0..len).any(|j| target.get(j)) {
        return None;
    }
    Some(target.slice(len, len + k))
}

/// Flattened generator table for Gray-code walks over a span.
pub(crate) struct PackedBasis {
    stride: usize,
    words: Vec<u64>,
}

impl PackedBasis {
    pub(crate) fn new(basis: &[BitVector]) -> Self {
        let stride = basis.first().map_or(0, |b| b.words().len());
        let mut words = Vec::with_capacity(stride * basis.len());
        for b in basis {
            words.extend_from_slice(b.words());
        }
        PackedBasis { stride, words }
    }

    #[inline]
    pub(crate) fn xor_into(&self, index: usize, acc: &mut [u64]) {
        let g = &self.words[index * self.stride..(index + 1) * self.stride];
        for (a, b) in acc.iter_mut().zip(g) {
            *a ^= *b;
        }
    }
}

fn check_cap(dim: usize, cap: u64) -> Result<()> {
    if dim >= 64 || (1u64 << dim) > cap {
        return Err(Error::CapExceeded { log2_size: dim, cap });
    }
    Ok(())
}

/// Minimum Hamming weight over all nonzero elements of the span of `basis`,
/// with a witness achieving it.
///
/// Walks the span in Gray-code order so every step costs a single XOR. The
/// witness is the first minimum encountered in that order.
pub fn min_weight_nonzero(basis: &[BitVector], cap: u64) -> Result<(usize, BitVector)> {
    let found = gray_search(basis, cap, None)?;
    Ok(found.expect("search without a threshold always reports the minimum"))
}

/// Searches the span for a nonzero word of weight strictly below
/// `threshold`, stopping at the first one found.
pub fn codeword_below(basis: &[BitVector], threshold: usize, cap: u64) -> Result<Option<BitVector>> {
    Ok(gray_search(basis, cap, Some(threshold))?.map(|(_, w)| w))
}

fn gray_search(
    basis: &[BitVector],
    cap: u64,
    threshold: Option<usize>,
) -> Result<Option<(usize, BitVector)>> {
    let Some(first) = basis.first() else {
        return Err(Error::EmptyCode);
    };
    let len = first.len();
    check_cap(basis.len(), cap)?;
    let packed = PackedBasis::new(basis);
    let mut current = vec![0u64; packed.stride];
    let mut best: Option<(usize, Vec<u64>)> = None;
    let total = 1u64 << basis.len();
    for i in 1..total {
        packed.xor_into(i.trailing_zeros() as usize, &mut current);
        let w: usize = current.iter().map(|x| x.count_ones() as usize).sum();
        if let Some(t) = threshold {
            if w < t {
                return Ok(Some((w, BitVector::from_words(len, current))));
            }
            continue;
        }
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, current.clone()));
            if w == 1 {
                break;
            }
        }
    }
    Ok(best.map(|(w, words)| (w, BitVector::from_words(len, words))))
}
