//! Forward, residual and backward error, plus Wedin's perturbation bounds.

mod backward;
mod meter;

pub use backward::{backward_error, BackwardErrorContext, DEFAULT_BE_CAP};
pub use meter::{ErrorMeter, ErrorReport};

use crate::error::{Error, Result};
use crate::linalg::vecops::{dist2, norm2};

/// `||x - x_hat|| / ||x||`.
///
/// ```
/// use itsketch::metrics::forward_error;
/// assert_eq!(forward_error(&[1.0, 0.0], &[1.0, 1.0]).unwrap(), 1.0);
/// ```
pub fn forward_error(x_true: &[f64], x_hat: &[f64]) -> Result<f64> {
    let nx = norm2(x_true);
    if nx == 0.0 {
        return Err(Error::ZeroReference("true solution"));
    }
    Ok(dist2(x_true, x_hat) / nx)
}

/// `||r(x) - r(x_hat)|| / ||r(x)||`.
pub fn residual_error(r_true: &[f64], r_hat: &[f64]) -> Result<f64> {
    let nr = norm2(r_true);
    if nr == 0.0 {
        return Err(Error::ZeroReference("true residual"));
    }
    Ok(dist2(r_true, r_hat) / nr)
}

/// Residual error that degrades gracefully on consistent systems.
///
/// Returns `(value, degenerate)`. When `r(x) = 0` the relative definition
/// is undefined and the value is `||r(x_hat)|| / ||b||` instead.
pub fn residual_error_or_absolute(r_true: &[f64], r_hat: &[f64], norm_b: f64) -> (f64, bool) {
    match residual_error(r_true, r_hat) {
        Ok(v) => (v, false),
        Err(_) if norm_b > 0.0 => (norm2(r_hat) / norm_b, true),
        Err(_) => (norm2(r_hat), true),
    }
}

/// Wedin's bounds on the absolute forward and residual errors of the
/// solution of a problem perturbed with relative size `epsilon`.
///
/// `fe = 2.23 kappa (||x|| + kappa ||r|| / ||A||) epsilon` and
/// `re = 2.23 (||A|| ||x|| + kappa ||r||) epsilon`, valid when
/// `epsilon * kappa <= 0.1`.
pub fn wedin_bounds(
    kappa: f64,
    norm_a: f64,
    norm_x: f64,
    norm_r: f64,
    epsilon: f64,
) -> Result<(f64, f64)> {
    if epsilon < 0.0 || kappa < 1.0 || norm_a <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "need epsilon >= 0, kappa >= 1, ||A|| > 0; got {epsilon}, {kappa}, {norm_a}"
        )));
    }
    if epsilon * kappa > 0.1 {
        return Err(Error::Hypothesis(format!(
            "epsilon * kappa = {:e} exceeds 0.1",
            epsilon * kappa
        )));
    }
    let fe = 2.23 * kappa * (norm_x + kappa / norm_a * norm_r) * epsilon;
    let re = 2.23 * (norm_a * norm_x + kappa * norm_r) * epsilon;
    Ok((fe, re))
}
