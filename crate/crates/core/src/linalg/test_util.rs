//! Random instance generators shared by unit tests.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{c64, ComplexMatrix, HermitianMatrix};

pub fn test_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data: Vec<c64> = (0..rows * cols)
        .map(|_| c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_vec(rows, cols, data).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    HermitianMatrix::symmetrize(&random_matrix(rng, n, n))
}

/// `M Mᴴ + shift·I`.
pub fn random_psd(rng: &mut impl Rng, n: usize, rank: usize, shift: f64) -> HermitianMatrix {
    HermitianMatrix::outer_gram(&random_matrix(rng, n, rank)).add_identity(shift)
}
