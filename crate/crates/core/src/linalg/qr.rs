//! Householder QR, unpivoted, with a nonnegative R diagonal.

use crate::error::{dim_err, Result};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::triangular::tri_solve_upper;
use crate::linalg::vecops::dot;

/// Explicit economy factors `A = Q R`.
#[derive(Debug, Clone)]
pub struct QrFactors {
    /// `m x n` with orthonormal columns.
    pub q: DenseMatrix,
    /// `n x n` upper triangular, nonnegative diagonal.
    pub r: DenseMatrix,
}

/// Compact Householder factorization: reflector vectors below the
/// diagonal (unit leading entry implied), `R` on and above it.
#[derive(Debug, Clone)]
pub struct HouseholderQr {
    packed: DenseMatrix,
    betas: Vec<f64>,
}

/// Reflector `P = I - beta v v^T` with `v[0] = 1` mapping `x` to `||x|| e_1`.
///
/// Returns `(beta, mu)` and overwrites `x[1..]` with `v[1..]`; `mu = ||x||`.
/// The first component is chosen to avoid cancellation when `x[0] > 0`.
fn house(x: &mut [f64]) -> (f64, f64) {
    let x0 = x[0];
    let tail = &x[1..];
    let tscale = tail.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if tscale == 0.0 {
        // already a multiple of e_1; flip it if negative
        return if x0 >= 0.0 { (0.0, x0) } else { (2.0, -x0) };
    }
    let scale = tscale.max(x0.abs());
    let s0 = x0 / scale;
    let sigma: f64 = tail.iter().map(|v| (v / scale) * (v / scale)).sum();
    let mu = (s0 * s0 + sigma).sqrt();
    let v0 = if s0 <= 0.0 { s0 - mu } else { -sigma / (s0 + mu) };
    let beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
    let inv = 1.0 / (v0 * scale);
    for v in x[1..].iter_mut() {
        *v *= inv;
    }
    (beta, mu * scale)
}

/// `y -= beta * v (v^T y)` with `v = [1; tail]`.
#[inline]
fn reflect(beta: f64, tail: &[f64], y: &mut [f64]) {
    if beta == 0.0 {
        return;
    }
    let w = beta * (y[0] + dot(tail, &y[1..]));
    y[0] -= w;
    for (yi, vi) in y[1..].iter_mut().zip(tail) {
        *yi -= w * vi;
    }
}

impl HouseholderQr {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        let (m, n) = a.shape();
        if m < n {
            return dim_err(format!("QR needs rows >= cols, got {m}x{n}"));
        }
        let mut packed = a.clone();
        let mut betas = Vec::with_capacity(n);
        for k in 0..n {
            let beta = {
                let colk = &mut packed.col_mut(k)[k..];
                let (beta, mu) = house(colk);
                colk[0] = mu;
                beta
            };
            if beta != 0.0 {
                let tail: Vec<f64> = packed.col(k)[k + 1..].to_vec();
                for j in (k + 1)..n {
                    reflect(beta, &tail, &mut packed.col_mut(j)[k..]);
                }
            }
            betas.push(beta);
        }
        Ok(Self { packed, betas })
    }

    pub fn rows(&self) -> usize {
        self.packed.rows()
    }

    pub fn cols(&self) -> usize {
        self.packed.cols()
    }

    pub fn r(&self) -> DenseMatrix {
        let n = self.cols();
        DenseMatrix::from_fn(n, n, |i, j| if i <= j { self.packed.get(i, j) } else { 0.0 })
    }

    /// Explicit thin `Q` (`m x n`), built by applying reflectors to `I[:, :n]`.
    pub fn q(&self) -> DenseMatrix {
        let (m, n) = self.packed.shape();
        let mut q = DenseMatrix::zeros(m, n);
        for j in 0..n {
            q.set(j, j, 1.0);
        }
        for k in (0..n).rev() {
            let tail = &self.packed.col(k)[k + 1..];
            for j in k..n {
                reflect(self.betas[k], tail, &mut q.col_mut(j)[k..]);
            }
        }
        q
    }

    /// Overwrites `b` with `Q_full^T b` (all `m` components).
    pub fn apply_qt(&self, b: &mut [f64]) {
        assert_eq!(b.len(), self.rows());
        for k in 0..self.cols() {
            reflect(self.betas[k], &self.packed.col(k)[k + 1..], &mut b[k..]);
        }
    }

    /// Least-squares solution `argmin ||b - A x||` via `R^{-1} (Q^T b)[:n]`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.rows() {
            return dim_err("right-hand side length differs from row count");
        }
        let mut qtb = b.to_vec();
        self.apply_qt(&mut qtb);
        qtb.truncate(self.cols());
        tri_solve_upper(&self.r(), &qtb)
    }
}

/// Economy Householder QR with explicit `Q` and nonnegative `diag(R)`.
///
/// Rank deficiency is not detected; a zero on the diagonal of `R` shows up
/// later as a singular triangular solve.
pub fn householder_qr_econ(a: &DenseMatrix) -> Result<QrFactors> {
    let f = HouseholderQr::new(a)?;
    Ok(QrFactors { q: f.q(), r: f.r() })
}

/// Dense Householder least-squares solve; the backward-stable reference.
pub fn qr_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    HouseholderQr::new(a)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vecops::norm2;
    use crate::rng::{gaussian_matrix, seeded};

    #[test]
    fn identity_factors_exactly() {
        let f = householder_qr_econ(&DenseMatrix::identity(5)).unwrap();
        assert_eq!(f.q, DenseMatrix::identity(5));
        assert_eq!(f.r, DenseMatrix::identity(5));
    }

    #[test]
    fn three_four_column() {
        let a = DenseMatrix::from_rows(&[&[3.0], &[4.0]]).unwrap();
        let f = householder_qr_econ(&a).unwrap();
        assert!((f.r.get(0, 0) - 5.0).abs() <= 4.0 * f64::EPSILON);
        assert!((f.q.get(0, 0) - 0.6).abs() <= 4.0 * f64::EPSILON);
        assert!((f.q.get(1, 0) - 0.8).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn negative_leading_entry_gives_positive_diagonal() {
        let a = DenseMatrix::from_rows(&[&[-2.0, 1.0], &[0.0, -3.0]]).unwrap();
        let f = householder_qr_econ(&a).unwrap();
        assert_eq!(f.r.get(0, 0), 2.0);
        assert!(f.r.get(1, 1) > 0.0);
        let qr = f.q.matmul(&f.r).unwrap();
        assert!(qr.sub(&a).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn gaussian_reconstruction() {
        let mut rng = seeded(11);
        let a = gaussian_matrix(&mut rng, 20, 5);
        let f = householder_qr_econ(&a).unwrap();
        let rec = f.q.matmul(&f.r).unwrap().sub(&a).unwrap();
        assert!(rec.frobenius_norm() / a.frobenius_norm() <= 1e-14);
        assert!(f.q.orthonormality_defect() <= 1e-14);
        assert!(f.r.is_upper_triangular());
        assert!((0..5).all(|i| f.r.get(i, i) >= 0.0));
    }

    #[test]
    fn rejects_wide() {
        assert!(householder_qr_econ(&DenseMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn least_squares_residual_is_orthogonal() {
        let mut rng = seeded(3);
        let a = gaussian_matrix(&mut rng, 30, 4);
        let b: Vec<f64> = (0..30).map(|i| (i as f64).sin()).collect();
        let x = qr_solve(&a, &b).unwrap();
        let ax = a.mul_vec(&x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, yi)| bi - yi).collect();
        let atr = a.tmul_vec(&r);
        assert!(norm2(&atr) <= 1e-13 * a.frobenius_norm() * norm2(&r));
    }
}
