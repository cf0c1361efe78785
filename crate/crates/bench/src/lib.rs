//! Shared inputs for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ungauge_core::BitMatrix;

/// Dense random GF(2) matrix with fixed seed.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits: Vec<Vec<bool>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_bool(0.5)).collect()).collect();
    BitMatrix::from_dense(&bits, cols)
}

/// Sparse random matrix with `per_row` ones in each row.
pub fn sparse_matrix(rows: usize, cols: usize, per_row: usize, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = std::collections::BTreeSet::new();
    for r in 0..rows {
        while entries.range((r, 0)..(r + 1, 0)).count() < per_row.min(cols) {
            entries.insert((r, rng.gen_range(0..cols)));
        }
    }
    BitMatrix::from_entries(rows, cols, entries).expect("entries are distinct and in range")
}
