//! Independent reference implementations the oracle tests compare against.
//!
//! Everything here recomputes results with the plainest workable algorithm
//! and shares no code paths with the library: byte matrices instead of
//! packed words, fresh elimination instead of incremental pivoting, full
//! per-message recomputation instead of Gray-code walks.

// Each test binary compiles this module separately and uses its own subset.
#![allow(dead_code)]

use graphcode::{BitMatrix, BitVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn vector_bytes(v: &BitVector) -> Vec<u8> {
    (0..v.len()).map(|i| v.get(i) as u8).collect()
}

pub fn matrix_bytes(m: &BitMatrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c) as u8).collect())
        .collect()
}

/// Rank over F_2 by textbook Gaussian elimination on byte rows.
pub fn naive_rank(mut rows: Vec<Vec<u8>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Membership of `v` in the span of `basis`, by rank comparison.
pub fn naive_in_span(basis: &[Vec<u8>], v: &[u8]) -> bool {
    let cols = v.len();
    let with: Vec<Vec<u8>> = basis.iter().cloned().chain([v.to_vec()]).collect();
    naive_rank(basis.to_vec(), cols) == naive_rank(with, cols)
}

/// Minimum nonzero-codeword weight by enumerating every message and
/// recomputing its codeword from scratch. `None` for the zero code.
pub fn naive_min_distance(generator: &[Vec<u8>]) -> Option<usize> {
    let k = generator.len();
    if k == 0 {
        return None;
    }
    assert!(k < 26, "oracle is for desk-scale dimensions");
    let n = generator[0].len();
    let mut best = usize::MAX;
    for m in 1u64..1 << k {
        let mut word = vec![0u8; n];
        for (i, row) in generator.iter().enumerate() {
            if m >> i & 1 == 1 {
                for (x, g) in word.iter_mut().zip(row) {
                    *x ^= g;
                }
            }
        }
        best = best.min(word.iter().map(|&b| b as usize).sum());
    }
    Some(best)
}

/// A seeded random byte matrix with the same distribution conventions as the
/// library's generators, but produced independently.
pub fn random_byte_matrix(rows: usize, cols: usize, seed: u64) -> Vec<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..=1u8)).collect())
        .collect()
}

/// Packs byte rows into a [`BitMatrix`].
pub fn pack(rows: &[Vec<u8>], cols: usize) -> BitMatrix {
    BitMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c] == 1)
}
