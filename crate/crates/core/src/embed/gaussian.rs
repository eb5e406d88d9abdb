use crate::embed::Embedding;
use crate::error::{dim_err, Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::{gaussian_matrix, seeded};
use crate::sparse::SparseCsrMatrix;

/// Dense embedding with i.i.d. `N(0, 1/d)` entries.
#[derive(Debug, Clone)]
pub struct GaussianEmbedding {
    seed: u64,
    s: DenseMatrix,
}

impl GaussianEmbedding {
    pub fn new(d: usize, m: usize, seed: u64) -> Result<Self> {
        if d == 0 || m == 0 {
            return Err(Error::InvalidParameter("d and m must be positive".into()));
        }
        let s = gaussian_matrix(&mut seeded(seed), d, m).scaled(1.0 / (d as f64).sqrt());
        Ok(Self { seed, s })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl Embedding for GaussianEmbedding {
    fn output_dim(&self) -> usize {
        self.s.rows()
    }

    fn input_dim(&self) -> usize {
        self.s.cols()
    }

    fn apply_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.s.cols() {
            return dim_err("vector length differs from embedding input dimension");
        }
        Ok(self.s.mul_vec(v))
    }

    fn apply_dense(&self, a: &DenseMatrix) -> Result<DenseMatrix> {
        self.s.matmul(a)
    }

    fn apply_sparse(&self, a: &SparseCsrMatrix) -> Result<DenseMatrix> {
        self.s.matmul(&a.to_dense())
    }

    fn to_dense(&self) -> DenseMatrix {
        self.s.clone()
    }
}
