//! Random subspace embeddings.
//!
//! The solvers use [`SparseSignEmbedding`]; [`GaussianEmbedding`] exists as
//! a dense cross-check. [`measure_distortion`] reports how far a given
//! sketch is from an isometry on a subspace, and [`choose_dim`] picks the
//! embedding dimension from the problem shape and target accuracy.

mod dim;
mod distortion;
mod gaussian;
mod sparse_sign;

pub use dim::choose_dim;
pub use distortion::{measure_distortion, range_basis, DistortionReport};
pub use gaussian::GaussianEmbedding;
pub use sparse_sign::SparseSignEmbedding;

use crate::error::Result;
use crate::linalg::DenseMatrix;
use crate::sparse::SparseCsrMatrix;

/// A linear map `S: R^m -> R^d` with `d` typically much smaller than `m`.
pub trait Embedding: Sync {
    /// Output dimension `d`.
    fn output_dim(&self) -> usize;
    /// Input dimension `m`.
    fn input_dim(&self) -> usize;
    /// `S v`
    fn apply_vec(&self, v: &[f64]) -> Result<Vec<f64>>;
    /// `S A` for dense `A` with `m` rows.
    fn apply_dense(&self, a: &DenseMatrix) -> Result<DenseMatrix>;
    /// `S A` for sparse `A` with `m` rows.
    fn apply_sparse(&self, a: &SparseCsrMatrix) -> Result<DenseMatrix>;
    /// Materializes `S` as a dense `d x m` matrix.
    fn to_dense(&self) -> DenseMatrix;
}
