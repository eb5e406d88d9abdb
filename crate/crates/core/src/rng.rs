//! Seeded randomness. Every random object in the crate is a pure function
//! of a `u64` seed through ChaCha8, so results are reproducible across
//! platforms and thread schedules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{householder_qr_econ, DenseMatrix};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a sub-task (e.g. the embedding of
/// trial `seed`), so generators and sketches never share draws.
pub fn substream(seed: u64, tag: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tag);
    rng
}

pub fn gaussian_vec(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> DenseMatrix {
    let data = gaussian_vec(rng, rows * cols);
    DenseMatrix::from_col_major(rows, cols, data).expect("finite gaussian draws")
}

/// First `k` columns of a Haar-distributed `m x m` orthogonal matrix.
///
/// QR of an i.i.d. Gaussian `m x k` block with the `R` diagonal forced
/// nonnegative; the sign convention of the factorization makes `Q` Haar.
pub fn haar_columns(rng: &mut impl Rng, m: usize, k: usize) -> DenseMatrix {
    assert!(k <= m, "cannot draw {k} orthonormal columns in dimension {m}");
    let g = gaussian_matrix(rng, m, k);
    householder_qr_econ(&g).expect("tall gaussian block").q
}
