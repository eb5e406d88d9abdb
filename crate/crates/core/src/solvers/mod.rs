//! Least-squares solvers built around one sketch `S A = Q R`.
//!
//! - [`sketch_and_solve`]: `x0 = R^{-1} Q^T (S b)`, a constant-factor
//!   approximation.
//! - [`iterative_sketching`]: refinement of `x0` on the normal equations
//!   preconditioned by `R^T R`, optionally with damping or momentum.
//! - [`sketch_and_precondition`]: LSQR on `A R^{-1}`.
//! - [`bad_variant`]: three plausible but unstable implementations of
//!   iterative sketching, kept as baselines.

mod bad;
mod config;
mod engine;
mod iterative;
mod lsqr;
mod precondition;
mod rates;
mod stopping;
mod trace;

pub use bad::{bad_variant, BadKind};
pub use config::{DivergenceGuard, Init, SolverConfig, Variant};
pub use iterative::{iterative_sketching, iterative_sketching_with, sketch_and_solve, Sketch};
pub use lsqr::{lsqr, lsqr_with_callback};
pub use precondition::{sketch_and_precondition, sketch_and_precondition_with};
pub use rates::{
    bound_at, damping_params, momentum_params, prefactor_c, prefactor_c_prime, rate_g_damp,
    rate_g_is, rate_g_mom, step_params, theoretical_bound_curve, BoundPoint,
};
pub use stopping::should_stop;
pub use trace::{IterRecord, SolveResult, SolveTrace, StopReason};
