//! The matrix interface the solvers iterate with.

use crate::embed::Embedding;
use crate::error::Result;
use crate::linalg::DenseMatrix;
use crate::sparse::SparseCsrMatrix;

/// A tall matrix the least-squares solvers can multiply and sketch.
pub trait Operator: Sync {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// `A x`
    fn apply(&self, x: &[f64]) -> Vec<f64>;
    /// `A^T r`
    fn apply_t(&self, r: &[f64]) -> Vec<f64>;
    /// `S A` for an embedding `S` with `S.cols() == self.nrows()`.
    fn sketch<E: Embedding + ?Sized>(&self, s: &E) -> Result<DenseMatrix>;

    /// `b - A x`, formed as one fused pass over `A x`.
    fn residual(&self, b: &[f64], x: &[f64]) -> Vec<f64> {
        let mut r = self.apply(x);
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri = bi - *ri;
        }
        r
    }
}

impl Operator for DenseMatrix {
    fn nrows(&self) -> usize {
        self.rows()
    }
    fn ncols(&self) -> usize {
        self.cols()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.mul_vec(x)
    }
    fn apply_t(&self, r: &[f64]) -> Vec<f64> {
        self.tmul_vec(r)
    }
    fn sketch<E: Embedding + ?Sized>(&self, s: &E) -> Result<DenseMatrix> {
        s.apply_dense(self)
    }
}

impl Operator for SparseCsrMatrix {
    fn nrows(&self) -> usize {
        self.rows()
    }
    fn ncols(&self) -> usize {
        self.cols()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.mul_vec(x)
    }
    fn apply_t(&self, r: &[f64]) -> Vec<f64> {
        self.tmul_vec(r)
    }
    fn sketch<E: Embedding + ?Sized>(&self, s: &E) -> Result<DenseMatrix> {
        s.apply_sparse(self)
    }
}
