//! Self-contained dense kernels: storage, Householder QR, triangular
//! solves, Jacobi SVD, estimators and the Lambert W function.

mod dense;
pub mod dense_solve;
mod estimate;
mod lambert;
mod qr;
mod svd;
mod triangular;
pub mod vecops;

pub use dense::DenseMatrix;
pub use estimate::{cond_est, default_power_steps, rand_power_norm_est};
pub use lambert::lambert_w0;
pub use qr::{householder_qr_econ, qr_solve, HouseholderQr, QrFactors};
pub use svd::{condition_number, spectral_norm, svd_values, thin_svd, ThinSvd};
pub use triangular::{right_divide_upper, tri_solve_upper, tri_solve_upper_transpose};
