//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tvar_core::downgrade::{downgrade_with, DowngradeOptions, TorusEmbedding};
use tvar_core::{AHDatum, Cone, Int, IntMatrix, LatticeInvolution};

/// Seeded random integer matrices with entries in `[-bound, bound]`.
pub fn random_matrices(count: usize, rows: usize, cols: usize, bound: i64) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| {
            let data = (0..rows * cols)
                .map(|_| Int::from(rng.random_range(-bound..=bound)))
                .collect();
            IntMatrix::new(rows, cols, data).expect("shape matches data")
        })
        .collect()
}

/// Generators of a seeded random cone in dimension `dim`.
pub fn random_cone_generators(count: usize, dim: usize) -> Vec<Vec<Int>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    (0..count)
        .map(|_| (0..dim).map(|_| Int::from(rng.random_range(-4i64..=4))).collect())
        .collect()
}

/// `(s, t) ↦ (s, t, s t², s² t)` on `𝔸⁴` with the swap real structures.
pub fn weil_restriction_on_four_space() -> TorusEmbedding {
    TorusEmbedding::new(
        IntMatrix::from_rows(&[[1, 0], [0, 1], [1, 2], [2, 1]]),
        Cone::orthant(4),
        LatticeInvolution::swap(),
        LatticeInvolution::swap().direct_sum(&LatticeInvolution::swap()),
    )
}

pub fn weil_restriction_datum() -> AHDatum {
    downgrade_with(&weil_restriction_on_four_space(), &DowngradeOptions::default())
        .expect("fixture downgrades")
}
