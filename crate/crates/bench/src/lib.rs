//! Shared, seeded inputs for the benchmarks.

use mogami_core::builders::random_fold_ball;
use mogami_core::Pseudomanifold;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A fold-built ball on exactly `n` tetrahedra with up to `n` folds.
pub fn fold_ball(n: usize, seed: u64) -> Pseudomanifold {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_fold_ball(n, n, &mut rng).complex
}

pub const SIZES: [usize; 4] = [4, 8, 16, 32];
