//! Optimal normwise backward error of a least-squares solution.
//!
//! With `r = b - A x`, `nu = ||r|| / ||x||` and `u = r / ||r||`, the
//! smallest `||dA||_F` for which `x` solves `min ||b - (A + dA) y||` is
//! `min(nu, sqrt(lambda_min(A A^T + nu^2 (I - u u^T))))`.
//!
//! Forming that `m x m` matrix (or the equivalent `m x (n+m)` augmented
//! SVD) squares or costs too much. Here the eigenvalue comes from a
//! rank-one downdate of `A A^T + nu^2 I`, whose eigenbasis the thin SVD of
//! `A` supplies. The smallest root of the secular equation
//!
//! ```text
//! f(l) = sum_i c_i^2 (s_i^2 - l) / (s_i^2 + nu^2 - l) - s^2 l / (nu^2 - l)
//! ```
//!
//! is found by safeguarded Newton, where `c = U_1^T u` and `s` is the norm
//! of the part of `u` outside `range(A)`. Written this way no term cancels,
//! so backward errors near the unit roundoff are resolved accurately.

use crate::error::{dim_err, Error, Result};
use crate::linalg::vecops::norm2;
use crate::linalg::{thin_svd, DenseMatrix, HouseholderQr};

/// Largest row count accepted by default.
pub const DEFAULT_BE_CAP: usize = 4000;

/// Factorization data for repeated backward-error evaluations with one `A`.
#[derive(Debug, Clone)]
pub struct BackwardErrorContext {
    qr: HouseholderQr,
    /// Left singular vectors of `R`, so `U_1 = Q U_r`.
    ur: DenseMatrix,
    sigma2: Vec<f64>,
    fro: f64,
}

impl BackwardErrorContext {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        Self::with_cap(a, DEFAULT_BE_CAP)
    }

    pub fn with_cap(a: &DenseMatrix, cap: usize) -> Result<Self> {
        if a.rows() > cap {
            return Err(Error::TooLarge {
                what: "backward error",
                size: a.rows(),
                cap,
            });
        }
        let qr = HouseholderQr::new(a)?;
        let svd = thin_svd(&qr.r())?;
        Ok(Self {
            qr,
            ur: svd.u,
            sigma2: svd.sigma.iter().map(|s| s * s).collect(),
            fro: a.frobenius_norm(),
        })
    }

    pub fn rows(&self) -> usize {
        self.qr.rows()
    }

    pub fn cols(&self) -> usize {
        self.qr.cols()
    }

    /// Relative backward error `||dA||_F / ||A||_F` of `x_hat`, given its
    /// residual `r_hat = b - A x_hat`.
    pub fn relative(&self, x_hat: &[f64], r_hat: &[f64]) -> Result<f64> {
        Ok(self.absolute(x_hat, r_hat)? / self.fro)
    }

    /// Optimal `||dA||_F`.
    pub fn absolute(&self, x_hat: &[f64], r_hat: &[f64]) -> Result<f64> {
        let (m, n) = (self.rows(), self.cols());
        if x_hat.len() != n || r_hat.len() != m {
            return dim_err("x_hat or r_hat has the wrong length");
        }
        let nr = norm2(r_hat);
        if nr == 0.0 {
            return Ok(0.0);
        }
        let mut w: Vec<f64> = r_hat.iter().map(|v| v / nr).collect();
        self.qr.apply_qt(&mut w);
        let s2 = if m > n { norm2(&w[n..]).powi(2) } else { 0.0 };
        let c = self.ur.tmul_vec(&w[..n]);
        let c2: Vec<f64> = c.iter().map(|v| v * v).collect();

        let nx = norm2(x_hat);
        if nx == 0.0 {
            // x = 0 is optimal for A + dA iff (A + dA)^T b = 0; the cheapest
            // such dA is -b (A^T b)^T / ||b||^2, of norm ||A^T u||.
            let s: f64 = self.sigma2.iter().zip(&c2).map(|(a, b)| a * b).sum();
            return Ok(s.sqrt());
        }
        let nu = nr / nx;
        let nu2 = nu * nu;

        let root = smallest_root(&self.sigma2, &c2, s2, nu2);
        let mut lambda = root;
        for (sig2, ci2) in self.sigma2.iter().zip(&c2) {
            if *ci2 == 0.0 {
                lambda = lambda.min(sig2 + nu2);
            }
        }
        // Directions orthogonal to both range(A) and r_hat keep eigenvalue nu^2.
        if m - n >= 2 || (m - n == 1 && s2 == 0.0) {
            lambda = lambda.min(nu2);
        }
        Ok(nu.min(lambda.max(0.0).sqrt()))
    }
}

/// Smallest root of the secular equation on `[0, smallest weighted pole)`.
///
/// `f` is decreasing and concave there with `f(0) >= 0`, so Newton from the
/// left overshoots once and then descends monotonically; bisection guards
/// the first step against jumping past the pole.
fn smallest_root(sigma2: &[f64], c2: &[f64], s2: f64, nu2: f64) -> f64 {
    let mut hi = if s2 > 0.0 { nu2 } else { f64::INFINITY };
    for (sig2, ci2) in sigma2.iter().zip(c2) {
        if *ci2 > 0.0 {
            hi = hi.min(sig2 + nu2);
        }
    }
    if !hi.is_finite() {
        return f64::INFINITY;
    }
    let eval = |l: f64| {
        let mut f = 0.0;
        let mut df = 0.0;
        for (sig2, ci2) in sigma2.iter().zip(c2) {
            if *ci2 > 0.0 {
                let den = sig2 + nu2 - l;
                f += ci2 * (sig2 - l) / den;
                df -= ci2 * nu2 / (den * den);
            }
        }
        if s2 > 0.0 {
            let den = nu2 - l;
            f -= s2 * l / den;
            df -= s2 * nu2 / (den * den);
        }
        (f, df)
    };
    let mut lo = 0.0;
    let mut x = 0.0;
    for _ in 0..200 {
        let (f, df) = eval(x);
        if f == 0.0 {
            return x;
        }
        if f > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - f / df;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * next.abs() || hi - lo <= f64::MIN_POSITIVE {
            return next;
        }
        x = next;
    }
    x
}

/// Relative backward error `min ||dA||_F / ||A||_F` of `x_hat` for
/// `min ||b - A y||`. Rejects `A` with more than [`DEFAULT_BE_CAP`] rows.
pub fn backward_error(a: &DenseMatrix, b: &[f64], x_hat: &[f64]) -> Result<f64> {
    if b.len() != a.rows() || x_hat.len() != a.cols() {
        return dim_err("b or x_hat has the wrong length");
    }
    let ctx = BackwardErrorContext::new(a)?;
    let mut r = a.mul_vec(x_hat);
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    ctx.relative(x_hat, &r)
}
