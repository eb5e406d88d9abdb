use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::problems::{LsProblem, ProblemMatrix};
use crate::rng::{gaussian_vec, substream};
use crate::sparse::SparseCsrMatrix;

const NNZ_PER_ROW: usize = 3;

/// Sparse test problem: each row of `A` has three `+-1` entries in distinct
/// uniformly random columns; `b` is standard Gaussian. No truth attached.
pub fn gen_sparse(m: usize, n: usize, seed: u64) -> Result<LsProblem> {
    if n < NNZ_PER_ROW || m < n {
        return Err(Error::InvalidParameter(format!(
            "need m >= n >= 3, got m={m}, n={n}"
        )));
    }
    let mut rng = substream(seed, 1);
    let mut offsets = Vec::with_capacity(m + 1);
    let mut indices = Vec::with_capacity(NNZ_PER_ROW * m);
    let mut values = Vec::with_capacity(NNZ_PER_ROW * m);
    offsets.push(0);
    for _ in 0..m {
        let mut cols = sample(&mut rng, n, NNZ_PER_ROW).into_vec();
        cols.sort_unstable();
        for c in cols {
            indices.push(c);
            values.push(if rng.random::<bool>() { 1.0 } else { -1.0 });
        }
        offsets.push(indices.len());
    }
    let a = SparseCsrMatrix::new(m, n, offsets, indices, values)?;
    let b = gaussian_vec(&mut substream(seed, 2), m);
    Ok(LsProblem {
        a: ProblemMatrix::Sparse(a),
        b,
        truth: None,
    })
}
