//! Binary linear codes with exact parameters.
//!
//! A [`LinearCode`] is a subspace of `F_2^N` held as a full-row-rank generator
//! matrix together with a parity-check matrix. Construct it from whichever
//! matrix is at hand; the other is derived by a kernel computation, and the
//! construction keeps whatever parity-check matrix you supplied (including
//! redundant rows) because downstream consumers care about the literal matrix,
//! not just the subspace it cuts out.
//!
//! Rates and relative distances are exact rationals; the minimum distance is
//! found by brute force over all nonzero codewords, walking the message space
//! in Gray-code order so each step costs one row XOR.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{parse_matrix_body, BitMatrix, BitVector};
use crate::textio::LineCursor;
use crate::{ParseError, Rational};

/// Default brute-force cap: dimensions above this (~6.7e7 codewords) are
/// refused unless the caller raises the cap explicitly.
pub const DEFAULT_DISTANCE_CAP: usize = 26;

/// Message-space sizes up to `2^this` are enumerated on one thread; larger
/// walks are split into per-worker Gray-code segments with identical results.
const PARALLEL_DISTANCE_BITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    /// Rate and relative distance divide by the length.
    #[error("code has length 0, so rate is undefined")]
    ZeroLength,
    /// The minimum in `dist(C)` ranges over nonzero codewords; for the zero
    /// code it is an empty minimum, which we refuse rather than invent.
    #[error("the zero code has no nonzero codeword, so distance is undefined")]
    ZeroCode,
    #[error("code dimension {dim} exceeds the brute-force cap {cap}")]
    DistanceCapExceeded { dim: usize, cap: usize },
    #[error("random code: no rank-{k} generator of length {n} found in {tries} draws")]
    RetriesExhausted { n: usize, k: usize, tries: usize },
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
}

/// A linear code over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    length: usize,
    /// Full row rank, `dimension x length`.
    generator: BitMatrix,
    /// May contain redundant rows; kept exactly as supplied when the code was
    /// built from a parity-check matrix.
    parity_check: BitMatrix,
}

impl LinearCode {
    /// The code `{v : h * v = 0}`. The matrix is kept as given — redundant
    /// rows and all — and a generator is derived from its kernel.
    pub fn from_parity_check(h: BitMatrix) -> LinearCode {
        let length = h.cols();
        let generator = BitMatrix::from_rows(length, &h.kernel_basis());
        LinearCode {
            length,
            generator,
            parity_check: h,
        }
    }

    /// The row space of `g`. Rows that already form a basis are kept as
    /// given; rank-deficient rows are reduced to a basis first. The
    /// parity-check matrix is derived from the kernel.
    pub fn from_generator(g: BitMatrix) -> LinearCode {
        let length = g.cols();
        let re = g.row_reduce();
        let generator = if re.pivots.len() == g.rows() {
            g
        } else {
            let basis: Vec<BitVector> = (0..re.pivots.len()).map(|r| re.matrix.row(r)).collect();
            BitMatrix::from_rows(length, &basis)
        };
        let parity_check = BitMatrix::from_rows(length, &generator.kernel_basis());
        LinearCode {
            length,
            generator,
            parity_check,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    /// `dim / N` as an exact rational.
    pub fn rate(&self) -> Result<Rational, CodeError> {
        if self.length == 0 {
            return Err(CodeError::ZeroLength);
        }
        Ok(Rational::new(self.dimension() as i64, self.length as i64))
    }

    /// Whether `v` satisfies every parity check.
    ///
    /// # Panics
    ///
    /// Panics if `v.len() != length`.
    pub fn is_codeword(&self, v: &BitVector) -> bool {
        self.parity_check.mul_vec(v).is_zero()
    }

    /// Exact minimum weight of a nonzero codeword, by enumerating all
    /// `2^dim - 1` of them via a Gray-code walk (one row XOR per codeword).
    ///
    /// Walks above [`PARALLEL_DISTANCE_BITS`] are partitioned into message
    /// ranges and minimized in parallel; the result does not depend on the
    /// partitioning.
    pub fn min_distance_bruteforce(&self, dim_cap: usize) -> Result<usize, CodeError> {
        let k = self.dimension();
        if k == 0 {
            return Err(CodeError::ZeroCode);
        }
        if k > dim_cap {
            return Err(CodeError::DistanceCapExceeded { dim: k, cap: dim_cap });
        }
        let total: u64 = 1 << k;
        if k <= PARALLEL_DISTANCE_BITS {
            return Ok(self.min_weight_in_message_range(0, total));
        }
        let chunks = (rayon::current_num_threads() * 4).max(1) as u64;
        let chunk_len = total.div_ceil(chunks);
        Ok((0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * chunk_len;
                let hi = total.min(lo + chunk_len);
                self.min_weight_in_message_range(lo, hi)
            })
            .min()
            .expect("at least one chunk"))
    }

    /// Minimum weight over the codewords of messages `gray(m)` for `m` in
    /// `[lo, hi)`, skipping the zero codeword (message 0). `usize::MAX` if the
    /// range contains only the zero codeword.
    fn min_weight_in_message_range(&self, lo: u64, hi: u64) -> usize {
        let gray = |m: u64| m ^ (m >> 1);
        let mut cw = BitVector::zeros(self.length);
        for i in 0..self.dimension() {
            if gray(lo) >> i & 1 == 1 {
                cw.xor_assign(&self.generator.row(i));
            }
        }
        let mut best = if gray(lo) == 0 { usize::MAX } else { cw.weight() };
        for m in lo + 1..hi {
            // gray(m) and gray(m-1) differ exactly in bit trailing_zeros(m).
            cw.xor_assign(&self.generator.row(m.trailing_zeros() as usize));
            best = best.min(cw.weight());
        }
        best
    }

    /// `dist / N` as an exact rational.
    pub fn relative_distance(&self, dim_cap: usize) -> Result<Rational, CodeError> {
        if self.length == 0 {
            return Err(CodeError::ZeroLength);
        }
        let d = self.min_distance_bruteforce(dim_cap)?;
        Ok(Rational::new(d as i64, self.length as i64))
    }

    /// The `[n, 1, n]` repetition code.
    ///
    /// # Panics
    ///
    /// Panics if `n == 0`.
    pub fn repetition(n: usize) -> LinearCode {
        assert!(n >= 1, "repetition code needs length at least 1");
        LinearCode::from_generator(BitMatrix::from_fn(1, n, |_, _| true))
    }

    /// The even-weight code: a single all-ones parity check. `parity(0)` is
    /// the trivial length-0 code (a `1 x 0` check), which is legal — it is
    /// what sits at an isolated vertex.
    pub fn parity(n: usize) -> LinearCode {
        LinearCode::from_parity_check(BitMatrix::from_fn(1, n, |_, _| true))
    }

    /// The `[7, 4, 3]` Hamming code. Parity-check columns are the nonzero
    /// vectors of `F_2^3`, most significant bit in row 0: column `j` reads the
    /// binary digits of `j + 1`.
    pub fn hamming_7_4() -> LinearCode {
        LinearCode::from_parity_check(BitMatrix::from_fn(3, 7, |r, c| (c + 1) >> (2 - r) & 1 == 1))
    }

    /// All of `F_2^n`: an empty (0-row) parity check.
    pub fn full(n: usize) -> LinearCode {
        LinearCode::from_parity_check(BitMatrix::zeros(0, n))
    }

    /// The zero code `{0}`: the identity parity check.
    pub fn zero(n: usize) -> LinearCode {
        LinearCode::from_parity_check(BitMatrix::identity(n))
    }

    /// A code of dimension exactly `k` and length `n` with a uniformly random
    /// generator, re-drawn until the rows are independent (at most 1000
    /// draws). Deterministic per seed.
    pub fn random_code(n: usize, k: usize, seed: u64) -> Result<LinearCode, CodeError> {
        if k > n {
            return Err(CodeError::InvalidParameters(format!(
                "dimension {k} exceeds length {n}"
            )));
        }
        const TRIES: usize = 1000;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..TRIES {
            let g = random_matrix(k, n, &mut rng);
            if g.rank() == k {
                return Ok(LinearCode::from_generator(g));
            }
        }
        Err(CodeError::RetriesExhausted { n, k, tries: TRIES })
    }

    /// Serializes the parity-check view: a `parity` header, then the matrix
    /// text format.
    pub fn to_text_parity(&self) -> String {
        format!("parity\n{}", self.parity_check.to_text())
    }

    /// Serializes the generator view: a `generator` header, then the matrix
    /// text format.
    pub fn to_text_generator(&self) -> String {
        format!("generator\n{}", self.generator.to_text())
    }

    /// Parses either serialization.
    pub fn from_text(text: &str) -> Result<LinearCode, ParseError> {
        let mut cursor = LineCursor::new(text);
        let header = cursor.expect_line("a `parity` or `generator` header")?;
        let kind = header.trim();
        if kind != "parity" && kind != "generator" {
            return Err(ParseError::new(
                cursor.line_no(),
                format!("expected `parity` or `generator`, found {header:?}"),
            ));
        }
        let m = parse_matrix_body(&mut cursor)?;
        cursor.expect_end()?;
        Ok(if kind == "parity" {
            LinearCode::from_parity_check(m)
        } else {
            LinearCode::from_generator(m)
        })
    }
}

/// Uniformly random `rows x cols` matrix from the given stream.
pub(crate) fn random_matrix(rows: usize, cols: usize, rng: &mut impl RngCore) -> BitMatrix {
    BitMatrix::from_fn(rows, cols, |_, _| rng.next_u32() & 1 == 1)
}
