//! Dense linear algebra over GF(2) with bit-packed storage.
//!
//! [`BitVector`] packs bits into `u64` words; [`BitMatrix`] stores a row-major
//! sequence of equally sized packed rows, so row operations (the inner loop of
//! Gaussian elimination) are word-wide XORs. Addition is XOR, multiplication
//! is AND, and a dot product is the parity of a masked popcount.
//!
//! Both types keep the unused high bits of the last word zero at all times,
//! which makes equality, hashing, and weight computations plain word
//! operations. Every mutating method preserves this invariant.
//!
//! Empty shapes are legal throughout: a `0 x n` matrix is the zero map out of
//! an `n`-dimensional space (its kernel is everything), and an `n x 0` matrix
//! is the unique map from the zero space. Shape mismatches in arithmetic are
//! programmer errors and panic; only the text decoder returns `Result`.

use std::fmt;

use crate::textio::{parse_fields, LineCursor};
use crate::ParseError;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2), packed least-significant-bit first into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// The zero vector of the given length (length 0 is allowed).
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from explicit bits.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones exactly at `support`.
    ///
    /// # Panics
    ///
    /// Panics if any index in `support` is out of range.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = BitVector::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// # Panics
    ///
    /// Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    /// # Panics
    ///
    /// Panics if `i >= len`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    /// # Panics
    ///
    /// Panics if `i >= len`.
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight: the number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place addition over GF(2).
    ///
    /// # Panics
    ///
    /// Panics if the lengths differ.
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Iterates over all bits in index order.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Iterates over the indices of the set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
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

/// Result of row reduction: the reduced row echelon form together with the
/// pivot columns, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

/// A dense matrix over GF(2) with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    row_words: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    /// The zero matrix of the given shape. Either dimension may be 0.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let row_words = words_for(cols);
        BitMatrix {
            rows,
            cols,
            row_words,
            words: vec![0; rows * row_words],
        }
    }

    /// The `n x n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix with the given rows. `cols` is explicit so that a
    /// matrix with zero rows still has a well-defined width.
    ///
    /// # Panics
    ///
    /// Panics if some row does not have length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            m.set_row(r, row);
        }
        m
    }

    /// Builds a matrix entrywise from a predicate on `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
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

    /// # Panics
    ///
    /// Panics if out of range.
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range for {}x{}", self.rows, self.cols);
        self.words[r * self.row_words + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    /// # Panics
    ///
    /// Panics if out of range.
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range for {}x{}", self.rows, self.cols);
        let mask = 1u64 << (c % WORD_BITS);
        let w = r * self.row_words + c / WORD_BITS;
        if value {
            self.words[w] |= mask;
        } else {
            self.words[w] &= !mask;
        }
    }

    /// Copies row `r` out as a vector.
    pub fn row(&self, r: usize) -> BitVector {
        assert!(r < self.rows, "row {r} out of range for {} rows", self.rows);
        BitVector {
            len: self.cols,
            words: self.words[r * self.row_words..(r + 1) * self.row_words].to_vec(),
        }
    }

    /// Overwrites row `r`.
    ///
    /// # Panics
    ///
    /// Panics if `row.len() != cols`.
    pub fn set_row(&mut self, r: usize, row: &BitVector) {
        assert!(r < self.rows, "row {r} out of range for {} rows", self.rows);
        assert_eq!(row.len, self.cols, "row length does not match column count");
        self.words[r * self.row_words..(r + 1) * self.row_words].copy_from_slice(&row.words);
    }

    /// Copies column `c` out as a vector of length `rows`.
    pub fn column(&self, c: usize) -> BitVector {
        assert!(c < self.cols, "column {c} out of range for {} columns", self.cols);
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Matrix-vector product over GF(2).
    ///
    /// # Panics
    ///
    /// Panics if `v.len() != cols`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(self.cols, v.len, "matrix-vector shape mismatch: {}x{} times length {}", self.rows, self.cols, v.len);
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.words[r * self.row_words..(r + 1) * self.row_words]
                .iter()
                .zip(&v.words)
            {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Matrix product over GF(2).
    ///
    /// # Panics
    ///
    /// Panics if `self.cols != rhs.rows`.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch: {}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols);
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let dst = r * out.row_words;
                    let src = c * rhs.row_words;
                    for w in 0..out.row_words {
                        out.words[dst + w] ^= rhs.words[src + w];
                    }
                }
            }
        }
        out
    }

    /// Stacks matrices vertically. All blocks must have the same width.
    ///
    /// # Panics
    ///
    /// Panics if `blocks` is empty or the widths differ.
    pub fn vstack(blocks: &[&BitMatrix]) -> BitMatrix {
        assert!(!blocks.is_empty(), "vstack of zero blocks has no width");
        let cols = blocks[0].cols;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for block in blocks {
            assert_eq!(block.cols, cols, "vstack blocks must share a column count");
            out.words[r0 * out.row_words..(r0 + block.rows) * out.row_words]
                .copy_from_slice(&block.words);
            r0 += block.rows;
        }
        out
    }

    /// Writes `block` into `self` with its top-left entry at `(r0, c0)`.
    ///
    /// # Panics
    ///
    /// Panics if the block does not fit.
    pub fn write_block(&mut self, r0: usize, c0: usize, block: &BitMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block does not fit at ({r0}, {c0})");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.row_words {
            self.words.swap(a * self.row_words + w, b * self.row_words + w);
        }
    }

    /// XORs row `src` into row `dst`.
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.row_words {
            let v = self.words[src * self.row_words + w];
            self.words[dst * self.row_words + w] ^= v;
        }
    }

    /// Reduced row echelon form by Gaussian elimination.
    ///
    /// Pivots are chosen deterministically: scanning columns left to right,
    /// each pivot is the first not-yet-used row with a one in that column.
    /// The result is fully reduced (each pivot is the only one in its column),
    /// so reducing an already reduced matrix is the identity.
    pub fn row_reduce(&self) -> RowEchelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            for other in 0..m.rows {
                if other != pivot_row && m.get(other, col) {
                    m.xor_row_into(pivot_row, other);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        RowEchelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().pivots.len()
    }

    /// A basis of the right kernel `{v : self * v = 0}`, one vector per free
    /// column, ordered by increasing free column index. Empty when the matrix
    /// has full column rank.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let re = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &re.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in re.pivots.iter().enumerate() {
                if re.matrix.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// A basis of the column space: the original columns (not their reduced
    /// images) at the pivot positions of the row reduction.
    pub fn column_space_basis(&self) -> Vec<BitVector> {
        self.row_reduce()
            .pivots
            .iter()
            .map(|&c| self.column(c))
            .collect()
    }

    /// Glues `right` onto the end of each row.
    ///
    /// # Panics
    ///
    /// Panics if the row counts differ.
    pub fn hstack(&self, right: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, right.rows, "hstack blocks must share a row count");
        let mut out = BitMatrix::zeros(self.rows, self.cols + right.cols);
        out.write_block(0, 0, self);
        out.write_block(0, self.cols, right);
        out
    }

    /// The inverse of a square matrix, or `None` if it is singular.
    ///
    /// # Panics
    ///
    /// Panics if the matrix is not square.
    pub fn inverse(&self) -> Option<BitMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let re = self.hstack(&BitMatrix::identity(n)).row_reduce();
        if re.pivots.len() < n || re.pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        let mut inv = BitMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, re.matrix.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// Serializes as text: a `<rows> <cols>` header line, then one line of
    /// `0`/`1` characters per row. A matrix with zero columns serializes its
    /// rows as empty lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses the format written by [`BitMatrix::to_text`]. Trailing blank
    /// lines are tolerated; anything else after the last row is an error.
    pub fn from_text(text: &str) -> Result<BitMatrix, ParseError> {
        let mut cursor = LineCursor::new(text);
        let m = parse_matrix_body(&mut cursor)?;
        cursor.expect_end()?;
        Ok(m)
    }
}

/// Parses one matrix (header + rows) starting at the cursor, leaving the
/// cursor just past the last row. Used by the formats that embed matrices.
pub(crate) fn parse_matrix_body(cursor: &mut LineCursor<'_>) -> Result<BitMatrix, ParseError> {
    let header = cursor.expect_line("a `<rows> <cols>` matrix header")?;
    let dims: Vec<usize> = parse_fields(header, cursor.line_no(), 2, "a `<rows> <cols>` matrix header")?;
    let (rows, cols) = (dims[0], dims[1]);
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        // A zero-column matrix still stores its rows, as empty lines; but the
        // final newline of the input may have been trimmed, so accept a
        // missing last line when the width is zero.
        let line = match cursor.next_line() {
            Some(line) => line,
            None if cols == 0 => "",
            None => {
                return Err(ParseError::new(
                    cursor.line_no() + 1,
                    format!("unexpected end of input, expected matrix row {r}"),
                ))
            }
        };
        if line.len() != cols {
            return Err(ParseError::new(
                cursor.line_no(),
                format!("expected {cols} characters in matrix row, found {}", line.len()),
            ));
        }
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(r, c, true),
                other => {
                    return Err(ParseError::new(
                        cursor.line_no(),
                        format!("invalid character {other:?} in matrix row, expected `0` or `1`"),
                    ))
                }
            }
        }
    }
    Ok(m)
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Whether `v` lies in the span of `basis`. An empty basis spans only zero.
///
/// # Panics
///
/// Panics if the vectors do not all have the same length.
pub fn in_span(basis: &[BitVector], v: &BitVector) -> bool {
    for b in basis {
        assert_eq!(b.len(), v.len(), "span membership with mismatched lengths");
    }
    if basis.is_empty() {
        return v.is_zero();
    }
    let m = BitMatrix::from_rows(v.len(), basis);
    let mut with_v = basis.to_vec();
    with_v.push(v.clone());
    let m2 = BitMatrix::from_rows(v.len(), &with_v);
    m.rank() == m2.rank()
}

/// Solves `m * x = rhs`, returning one solution or `None` if the system is
/// inconsistent. With multiple solutions, the one with zeros in all free
/// coordinates is returned.
///
/// # Panics
///
/// Panics if `rhs.len() != m.rows()`.
pub fn solve(m: &BitMatrix, rhs: &BitVector) -> Option<BitVector> {
    assert_eq!(m.rows(), rhs.len(), "solve with mismatched dimensions");
    let aug = m.hstack(&BitMatrix::from_fn(rhs.len(), 1, |r, _| rhs.get(r)));
    let re = aug.row_reduce();
    if re.pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = BitVector::zeros(m.cols());
    for (r, &p) in re.pivots.iter().enumerate() {
        if re.matrix.get(r, m.cols()) {
            x.set(p, true);
        }
    }
    Some(x)
}
