//! Cross-checks of linear-code parameters against independent enumeration,
//! plus structural distances of the named code families.

mod common;

use common::{matrix_bytes, naive_min_distance};
use graphcode::{BitMatrix, BitVector, LinearCode, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn bruteforce_distance_matches_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for trial in 0..50u64 {
        let n = rng.gen_range(4..=18);
        let k = rng.gen_range(1..=n.min(12));
        let code = LinearCode::random_code(n, k, 23_000 + trial).unwrap();
        assert_eq!(code.dimension(), k);
        let got = code.min_distance_bruteforce(12).unwrap();
        let want = naive_min_distance(&matrix_bytes(code.generator())).unwrap();
        assert_eq!(got, want, "distance mismatch, n={n} k={k} trial={trial}");
    }
}

/// Recomputes the minimum distance of a one-word code by enumerating every
/// message and rebuilding its codeword from scratch — no Gray updates, no
/// shared state with the library walk.
fn word_enumerator_distance(code: &LinearCode) -> usize {
    assert!(code.length() <= 64);
    let g = code.generator();
    let rows: Vec<u64> = (0..g.rows())
        .map(|r| (0..g.cols()).fold(0u64, |acc, c| acc | (u64::from(g.get(r, c)) << c)))
        .collect();
    (1u64..1 << rows.len())
        .map(|m| {
            rows.iter()
                .enumerate()
                .filter(|&(i, _)| m >> i & 1 == 1)
                .fold(0u64, |acc, (_, row)| acc ^ row)
                .count_ones() as usize
        })
        .min()
        .expect("dimension is positive")
}

#[test]
fn parallel_walk_agrees_with_word_enumeration() {
    // Dimension 21 crosses the threshold where the walk splits the message
    // range across workers; the split must not skip or double-count.
    let code = LinearCode::random_code(40, 21, 77).unwrap();
    let got = code.min_distance_bruteforce(26).unwrap();
    assert_eq!(got, word_enumerator_distance(&code));
}

#[test]
fn family_distances_are_structural() {
    assert_eq!(LinearCode::repetition(9).min_distance_bruteforce(26).unwrap(), 9);
    assert_eq!(LinearCode::hamming_7_4().min_distance_bruteforce(26).unwrap(), 3);
    assert_eq!(LinearCode::full(5).min_distance_bruteforce(26).unwrap(), 1);
    // Weight-2 words exist in every even-weight code; dimension 21 also
    // exercises the parallel path with a known answer.
    assert_eq!(LinearCode::parity(22).min_distance_bruteforce(26).unwrap(), 2);
}

#[test]
fn singleton_bound_holds_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for trial in 0..40u64 {
        let n = rng.gen_range(2..=16);
        let k = rng.gen_range(1..=n.min(10));
        let code = LinearCode::random_code(n, k, 31_000 + trial).unwrap();
        let d = code.min_distance_bruteforce(12).unwrap();
        assert!(d >= 1);
        assert!(d <= n - k + 1, "Singleton violated: n={n} k={k} d={d}");
    }
}

#[test]
fn rate_and_relative_distance_are_exact_ratios() {
    let hamming = LinearCode::hamming_7_4();
    assert_eq!(hamming.rate().unwrap(), Rational::new(4, 7));
    assert_eq!(hamming.relative_distance(26).unwrap(), Rational::new(3, 7));
    let parity = LinearCode::parity(6);
    assert_eq!(parity.rate().unwrap(), Rational::new(5, 6));
    assert_eq!(parity.relative_distance(26).unwrap(), Rational::new(1, 3));
}

#[test]
fn generator_and_parity_check_are_orthogonal() {
    for trial in 0..30u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(33_000 + trial);
        let rows = rng.gen_range(1..6);
        let cols = rng.gen_range(6..14);
        let h = BitMatrix::from_fn(rows, cols, |_, _| rng.gen());
        let code = LinearCode::from_parity_check(h.clone());
        let g = code.generator();
        for r in 0..g.rows() {
            assert!(h.mul_vec(&g.row(r)).is_zero());
        }
        assert_eq!(g.rows(), cols - h.rank());
    }
}

proptest! {
    #[test]
    fn prop_codewords_satisfy_membership(seed in any::<u64>(), n in 2usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=n);
        let code = LinearCode::random_code(n, k, seed).unwrap();
        // Random message -> codeword -> membership.
        let mut word = BitVector::zeros(n);
        for r in 0..k {
            if rng.gen() {
                word.xor_assign(&code.generator().row(r));
            }
        }
        prop_assert!(code.is_codeword(&word));
        // Distance-many flips of the zero word can leave the code, one flip
        // of a codeword always does for distance >= 2 codes.
        if code.min_distance_bruteforce(16).unwrap() >= 2 {
            let mut bent = word.clone();
            bent.flip(rng.gen_range(0..n));
            prop_assert!(!code.is_codeword(&bent));
        }
    }

    #[test]
    fn prop_generator_round_trips(seed in any::<u64>(), n in 1usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..=n);
        let code = LinearCode::random_code(n, k, seed).unwrap();
        let again = LinearCode::from_generator(code.generator().clone());
        prop_assert_eq!(again.generator(), code.generator());
        prop_assert_eq!(again.dimension(), k);
    }
}
