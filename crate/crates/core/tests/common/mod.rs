#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wiretap_core::{c64, gram_pair, ComplexMatrix, GramPair, HermitianMatrix, WiretapChannel};

/// First reference instance: 3×2 legitimate and 2×2 eavesdropper channels.
pub fn example1() -> WiretapChannel {
    let h = ComplexMatrix::from_rows(&[
        &[(0.32, -0.52), (0.83, 1.15)],
        &[(0.51, -0.26), (0.06, -0.15)],
        &[(-0.11, 0.81), (0.29, 0.68)],
    ])
    .unwrap();
    let g = ComplexMatrix::from_rows(&[
        &[(0.03, -0.70), (-0.32, -0.32)],
        &[(0.24, -0.11), (1.36, 0.18)],
    ])
    .unwrap();
    WiretapChannel::new(h, g).unwrap()
}

/// Legitimate channel of the second reference instance (4×3).
pub fn example2_h() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        &[(0.89, 0.54), (-0.06, 0.60), (0.48, -1.11)],
        &[(0.46, 0.0), (-0.44, 0.80), (-1.07, 0.63)],
        &[(1.40, -0.13), (0.17, -0.82), (0.59, -0.31)],
        &[(0.43, -0.23), (0.03, 1.35), (0.44, -0.07)],
    ])
    .unwrap()
}

/// Second reference instance: 4×3 legitimate and 3×3 eavesdropper channels.
pub fn example2() -> WiretapChannel {
    let g = ComplexMatrix::from_rows(&[
        &[(0.46, -0.59), (0.24, -0.01), (-0.37, 0.15)],
        &[(0.51, -0.63), (0.58, 0.51), (0.86, -0.47)],
        &[(0.17, -0.24), (-0.83, 0.51), (0.04, -0.64)],
    ])
    .unwrap();
    WiretapChannel::new(example2_h(), g).unwrap()
}

pub fn grams1() -> GramPair {
    gram_pair(&example1()).unwrap()
}

pub fn grams2() -> GramPair {
    gram_pair(&example2()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_vec(rows, cols, data).unwrap()
}

/// `MMᴴ` with `M` of size `n × rank`.
pub fn random_psd(rng: &mut impl Rng, n: usize, rank: usize) -> HermitianMatrix {
    HermitianMatrix::outer_gram(&random_matrix(rng, n, rank))
}

/// `A = B + VVᴴ` with `V` of rank `m`, so `A − B` is PSD with rank `m`.
pub fn psd_singular_instance(rng: &mut impl Rng, n: usize, m: usize) -> GramPair {
    let b = random_psd(rng, n, n);
    let a = b.add(&random_psd(rng, n, m));
    GramPair::new(a, b).unwrap()
}

/// `A − B = VVᴴ − WWᴴ` with `V` of rank `m` and `W` of rank `n − m`.
pub fn indefinite_instance(rng: &mut impl Rng, n: usize, m: usize) -> GramPair {
    let base = random_psd(rng, n, n).scale(0.5);
    let a = base.add(&random_psd(rng, n, m));
    let b = base.add(&random_psd(rng, n, n - m));
    GramPair::new(a, b).unwrap()
}
