//! Inputs shared by the benchmarks.

use nilcoh_core::linalg::Matrix;
use nilcoh_core::sampling::gaussian;
use nilcoh_core::{catalog_get, AlgebraSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Dense random matrix with small Gaussian-rational entries.
pub fn random_matrix(seed: u64, rows: usize, cols: usize) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| gaussian(&mut rng)).collect()).collect())
}

/// Matrix of the given rank, as a product of random `rows×rank` and `rank×cols` factors.
pub fn low_rank_matrix(seed: u64, rows: usize, cols: usize, rank: usize) -> Matrix {
    random_matrix(seed, rows, rank).mul(&random_matrix(seed + 1, rank, cols))
}

/// Catalog specs used for the cohomology benchmarks, smallest first.
pub fn bench_specs() -> Vec<(String, AlgebraSpec)> {
    [
        "kodaira",
        "iwasawa",
        "exnilp(4, A=[[0,1,0],[0,0,0],[0,0,0]], B=[[1,1,0],[0,1,0],[0,0,0]])",
        "product(iwasawa,kodaira)",
    ]
    .iter()
    .map(|k| (k.to_string(), catalog_get(k).expect("shipped key").spec))
    .collect()
}
