//! Singular values by one-sided (Hestenes) Jacobi.
//!
//! Tall inputs are first reduced to their `n x n` triangular factor, so
//! the rotations act on the small side only. One-sided Jacobi keeps high
//! relative accuracy in the small singular values of graded matrices such
//! as the `R` factors of ill-conditioned problems.

use crate::error::{Error, Result};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::qr::HouseholderQr;
use crate::linalg::vecops::{dot, norm2};

const MAX_SWEEPS: usize = 80;

/// Thin SVD `A = U diag(sigma) V^T` of a tall matrix.
#[derive(Debug, Clone)]
pub struct ThinSvd {
    /// `m x n`; columns belonging to zero singular values are zero.
    pub u: DenseMatrix,
    /// Descending, nonnegative.
    pub sigma: Vec<f64>,
    /// `n x n` orthogonal.
    pub v: DenseMatrix,
}

/// Orthogonalizes the columns of `w` in place, accumulating rotations in `v`.
fn jacobi(w: &mut DenseMatrix, mut v: Option<&mut DenseMatrix>) -> Result<()> {
    let n = w.cols();
    let tol = f64::EPSILON * (n as f64).max(1.0);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(w.col(p), w.col(p));
                let beta = dot(w.col(q), w.col(q));
                let gamma = dot(w.col(p), w.col(q));
                if alpha == 0.0 || beta == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(w, p, q, c, s);
                if let Some(v) = v.as_deref_mut() {
                    rotate(v, p, q, c, s);
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::Domain(format!(
        "one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps"
    )))
}

fn rotate(w: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    for i in 0..w.rows() {
        let wp = w.get(i, p);
        let wq = w.get(i, q);
        w.set(i, p, c * wp - s * wq);
        w.set(i, q, s * wp + c * wq);
    }
}

/// Thin SVD of a tall (`m >= n`) matrix.
pub fn thin_svd(a: &DenseMatrix) -> Result<ThinSvd> {
    let qr = HouseholderQr::new(a)?;
    let n = a.cols();
    let mut w = qr.r();
    let mut v = DenseMatrix::identity(n);
    jacobi(&mut w, Some(&mut v))?;
    let sig: Vec<f64> = (0..n).map(|j| norm2(w.col(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sig[j].total_cmp(&sig[i]));

    let mut ur = DenseMatrix::zeros(n, n);
    let mut vs = DenseMatrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        sigma.push(sig[j]);
        vs.col_mut(k).copy_from_slice(v.col(j));
        if sig[j] > 0.0 {
            for (dst, src) in ur.col_mut(k).iter_mut().zip(w.col(j)) {
                *dst = src / sig[j];
            }
        }
    }
    let u = qr.q().matmul(&ur)?;
    Ok(ThinSvd { u, sigma, v: vs })
}

/// All `min(m, n)` singular values in descending order.
pub fn svd_values(a: &DenseMatrix) -> Result<Vec<f64>> {
    if a.rows() < a.cols() {
        return svd_values(&a.transpose());
    }
    let mut w = HouseholderQr::new(a)?.r();
    jacobi(&mut w, None)?;
    let mut s: Vec<f64> = (0..w.cols()).map(|j| norm2(w.col(j))).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

/// Spectral norm `sigma_max(A)`.
pub fn spectral_norm(a: &DenseMatrix) -> Result<f64> {
    Ok(svd_values(a)?[0])
}

/// `sigma_max / sigma_min`; infinite for rank-deficient input.
pub fn condition_number(a: &DenseMatrix) -> Result<f64> {
    let s = svd_values(a)?;
    Ok(s[0] / s[s.len() - 1])
}
