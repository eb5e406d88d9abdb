//! Least-squares instances: synthetic generators, the kernel-regression
//! builder and CSV ingestion.

mod io;
mod kernel;
mod randsvd;
mod sparse_gen;

pub use io::{load_csv, load_table, read_table, write_csv, write_table, Table};
pub use kernel::{gaussian_mixture, kernel_problem, KernelConfig, KernelProblem};
pub use randsvd::gen_randsvd;
pub use sparse_gen::gen_sparse;

use crate::error::Result;
use crate::linalg::vecops::norm2;
use crate::linalg::DenseMatrix;
use crate::metrics::{BackwardErrorContext, ErrorMeter};
use crate::operator::Operator;
use crate::sparse::SparseCsrMatrix;

/// Coefficient matrix of a problem.
#[derive(Debug, Clone)]
pub enum ProblemMatrix {
    Dense(DenseMatrix),
    Sparse(SparseCsrMatrix),
}

impl ProblemMatrix {
    pub fn rows(&self) -> usize {
        match self {
            Self::Dense(a) => a.rows(),
            Self::Sparse(a) => a.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Self::Dense(a) => a.cols(),
            Self::Sparse(a) => a.cols(),
        }
    }

    pub fn as_dense(&self) -> Option<&DenseMatrix> {
        match self {
            Self::Dense(a) => Some(a),
            Self::Sparse(_) => None,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            Self::Dense(a) => a.clone(),
            Self::Sparse(a) => a.to_dense(),
        }
    }

}

/// Known solution data of a generated problem.
#[derive(Debug, Clone)]
pub struct Truth {
    pub x: Vec<f64>,
    /// `r(x) = b - A x`, orthogonal to `range(A)`.
    pub r: Vec<f64>,
    pub kappa: f64,
    /// `||r(x)||`
    pub beta: f64,
}

/// `min ||b - A y||`, possibly with its exact solution attached.
#[derive(Debug, Clone)]
pub struct LsProblem {
    pub a: ProblemMatrix,
    pub b: Vec<f64>,
    pub truth: Option<Truth>,
}

impl LsProblem {
    pub fn shape(&self) -> (usize, usize) {
        (self.a.rows(), self.a.cols())
    }

    /// Scoring helper built from the ground truth, if any. The backward error
    /// is included on request and only for dense matrices.
    pub fn meter(&self, backward_error: bool) -> Result<Option<ErrorMeter>> {
        let Some(t) = &self.truth else {
            return Ok(None);
        };
        let mut meter = ErrorMeter::new(&t.x, &t.r, norm2(&self.b));
        if backward_error {
            if let ProblemMatrix::Dense(a) = &self.a {
                meter = meter.with_backward_error(BackwardErrorContext::new(a)?);
            }
        }
        Ok(Some(meter))
    }
}

impl Operator for ProblemMatrix {
    fn nrows(&self) -> usize {
        self.rows()
    }
    fn ncols(&self) -> usize {
        self.cols()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Self::Dense(a) => a.mul_vec(x),
            Self::Sparse(a) => a.mul_vec(x),
        }
    }
    fn apply_t(&self, r: &[f64]) -> Vec<f64> {
        match self {
            Self::Dense(a) => a.tmul_vec(r),
            Self::Sparse(a) => a.tmul_vec(r),
        }
    }
    fn sketch<E: crate::embed::Embedding + ?Sized>(&self, s: &E) -> Result<DenseMatrix> {
        match self {
            Self::Dense(a) => s.apply_dense(a),
            Self::Sparse(a) => s.apply_sparse(a),
        }
    }
}
