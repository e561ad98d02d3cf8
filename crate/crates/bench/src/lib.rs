//! Input generators shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use h1loc_core::{ModMatrix, ModVector, ModulusContext};

/// Deterministic random `rows x cols` matrix over `ctx`.
pub fn random_matrix(ctx: ModulusContext, rows: usize, cols: usize, seed: u64) -> ModMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = ctx.modulus();
    let entries = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
    ModMatrix::new(ctx, rows, cols, entries).expect("dimensions match")
}

pub fn random_vector(ctx: ModulusContext, len: usize, seed: u64) -> ModVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = ctx.modulus();
    ModVector::new(ctx, (0..len).map(|_| rng.gen_range(0..q)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let ctx = ModulusContext::new(5, 2).unwrap();
        assert_eq!(random_matrix(ctx, 3, 4, 1), random_matrix(ctx, 3, 4, 1));
        assert_eq!(random_vector(ctx, 3, 1), random_vector(ctx, 3, 1));
    }
}
