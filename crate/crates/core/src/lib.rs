//! Randomized solvers for overdetermined least squares `min ||b - A x||`.
//!
//! The centerpiece is iterative sketching: draw a sparse sign embedding
//! `S`, factor `S A = Q R`, start from the sketch-and-solve solution and
//! refine with `x_{i+1} = x_i + R^{-1} R^{-T} A^T (b - A x_i)`. Implemented
//! in that order it reaches the accuracy of a backward-stable dense solver
//! at the cost of a few matrix-vector products per step.
//!
//! ```
//! use itsketch::problems::gen_randsvd;
//! use itsketch::solvers::{iterative_sketching, SolverConfig};
//!
//! let p = gen_randsvd(1000, 10, 1e3, 1e-4, 42).unwrap();
//! let a = p.a.as_dense().unwrap();
//! let res = iterative_sketching(a, &p.b, &SolverConfig::new(200), None).unwrap();
//! assert_eq!(res.solution.len(), 10);
//! ```
//!
//! Modules:
//! - [`linalg`]: dense kernels (Householder QR, triangular solves, SVD).
//! - [`embed`]: sketching matrices and embedding-dimension selection.
//! - [`solvers`]: sketch-and-solve, iterative sketching, sketch-and-precondition.
//! - [`metrics`]: forward, residual and backward error.
//! - [`problems`]: test-problem generators and CSV input.

pub mod embed;
mod error;
pub mod linalg;
pub mod metrics;
pub mod operator;
pub mod problems;
pub mod rng;
pub mod solvers;
pub mod sparse;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub use operator::Operator;
pub use problems::LsProblem;
pub use sparse::SparseCsrMatrix;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;

/// Book chapters, compiled as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/problems.md")]
    pub mod problems {}
    #[doc = include_str!("../../../book/src/sketching.md")]
    pub mod sketching {}
    #[doc = include_str!("../../../book/src/iterative-sketching.md")]
    pub mod iterative_sketching {}
    #[doc = include_str!("../../../book/src/stability.md")]
    pub mod stability {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
