//! LSQR on the right-preconditioned operator `A R^{-1}`.
//!
//! Paige–Saunders recurrences without reorthogonalization. `R^{-1}` is
//! applied by triangular solves and never formed.

use crate::error::{Error, Result};
use crate::linalg::vecops::{axpy, norm2, scale};
use crate::linalg::{tri_solve_upper, tri_solve_upper_transpose, DenseMatrix};
use crate::operator::Operator;

/// Solves `min ||(b - A x0) - (A R^{-1}) z||` and returns
/// `(x0 + R^{-1} z, iterations)`.
///
/// Stops after `max_iters` steps, when the bidiagonalization terminates, or
/// when the estimate of `||M^T r|| / (||M|| ||r||)` (with `M = A R^{-1}`)
/// drops to `rtol`. `rtol = 0` disables the tolerance test.
pub fn lsqr<O: Operator + ?Sized>(
    a: &O,
    b: &[f64],
    x0: &[f64],
    precond_r: &DenseMatrix,
    max_iters: usize,
    rtol: f64,
) -> Result<(Vec<f64>, usize)> {
    lsqr_with_callback(a, b, x0, precond_r, max_iters, rtol, |_, _| Ok(()))
}

/// [`lsqr`] that hands each iterate `x_k` (`k >= 1`) to `on_iter`.
pub fn lsqr_with_callback<O: Operator + ?Sized>(
    a: &O,
    b: &[f64],
    x0: &[f64],
    precond_r: &DenseMatrix,
    max_iters: usize,
    rtol: f64,
    mut on_iter: impl FnMut(usize, &[f64]) -> Result<()>,
) -> Result<(Vec<f64>, usize)> {
    let n = a.ncols();
    if precond_r.shape() != (n, n) || x0.len() != n || b.len() != a.nrows() {
        return Err(Error::Dimension("lsqr operand shapes disagree".into()));
    }
    if let Some(i) = (0..n).find(|&i| precond_r.get(i, i) == 0.0) {
        return Err(Error::Singular { index: i });
    }
    let rf = precond_r;
    let lift = |z: &[f64]| -> Result<Vec<f64>> {
        let mut x = tri_solve_upper(rf, z)?;
        for (xi, x0i) in x.iter_mut().zip(x0) {
            *xi += x0i;
        }
        Ok(x)
    };

    let mut u = a.residual(b, x0);
    let mut beta = norm2(&u);
    if beta == 0.0 {
        return Ok((x0.to_vec(), 0));
    }
    scale(1.0 / beta, &mut u);
    let mut v = tri_solve_upper_transpose(rf, &a.apply_t(&u))?;
    let mut alpha = norm2(&v);
    if alpha == 0.0 {
        return Ok((x0.to_vec(), 0));
    }
    scale(1.0 / alpha, &mut v);

    let mut w = v.clone();
    let mut z = vec![0.0; n];
    let mut phibar = beta;
    let mut rhobar = alpha;
    let mut anorm2 = 0.0;
    let mut iters = 0;

    for k in 1..=max_iters {
        let mut t = a.apply(&tri_solve_upper(rf, &v)?);
        axpy(-alpha, &u, &mut t);
        u = t;
        beta = norm2(&u);
        anorm2 += alpha * alpha + beta * beta;
        if beta > 0.0 {
            scale(1.0 / beta, &mut u);
            let mut t = tri_solve_upper_transpose(rf, &a.apply_t(&u))?;
            axpy(-beta, &v, &mut t);
            v = t;
            alpha = norm2(&v);
            if alpha > 0.0 {
                scale(1.0 / alpha, &mut v);
            }
        }

        let rho = rhobar.hypot(beta);
        let c = rhobar / rho;
        let s = beta / rho;
        let theta = s * alpha;
        rhobar = -c * alpha;
        let phi = c * phibar;
        phibar *= s;

        axpy(phi / rho, &w, &mut z);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi = vi - (theta / rho) * *wi;
        }
        iters = k;
        on_iter(k, &lift(&z)?)?;

        if beta == 0.0 || alpha == 0.0 || phibar == 0.0 {
            break;
        }
        let arnorm = phibar * alpha * c.abs();
        if rtol > 0.0 && arnorm <= rtol * anorm2.sqrt() * phibar {
            break;
        }
    }
    Ok((lift(&z)?, iters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{householder_qr_econ, qr_solve};
    use crate::metrics::forward_error;
    use crate::rng::{gaussian_matrix, gaussian_vec, haar_columns, seeded};

    #[test]
    fn orthonormal_operator_converges_immediately() {
        let q = haar_columns(&mut seeded(1), 30, 5);
        let b = gaussian_vec(&mut seeded(2), 30);
        let (x, it) = lsqr(&q, &b, &[0.0; 5], &DenseMatrix::identity(5), 2, 0.0).unwrap();
        assert!(it <= 2);
        let expect = q.tmul_vec(&b);
        assert!(forward_error(&expect, &x).unwrap() <= 1e-13);
    }

    #[test]
    fn exact_preconditioner_converges_in_two_steps() {
        let a = gaussian_matrix(&mut seeded(3), 60, 8).scaled(5.0);
        let b = gaussian_vec(&mut seeded(4), 60);
        let r = householder_qr_econ(&a).unwrap().r;
        let (x, _) = lsqr(&a, &b, &[0.0; 8], &r, 2, 0.0).unwrap();
        let xs = qr_solve(&a, &b).unwrap();
        assert!(forward_error(&xs, &x).unwrap() <= 1e-12);
    }

    #[test]
    fn unpreconditioned_matches_dense() {
        let a = gaussian_matrix(&mut seeded(5), 200, 20);
        let b = gaussian_vec(&mut seeded(6), 200);
        let (x, _) = lsqr(&a, &b, &[0.0; 20], &DenseMatrix::identity(20), 200, 1e-14).unwrap();
        let xs = qr_solve(&a, &b).unwrap();
        assert!(forward_error(&xs, &x).unwrap() <= 1e-8);
    }

    #[test]
    fn zero_residual_returns_start() {
        let a = DenseMatrix::identity(3);
        let x0 = [1.0, 2.0, 3.0];
        let (x, it) = lsqr(&a, &x0, &x0, &DenseMatrix::identity(3), 5, 0.0).unwrap();
        assert_eq!((x, it), (x0.to_vec(), 0));
    }

    #[test]
    fn singular_preconditioner_rejected() {
        let a = DenseMatrix::identity(2);
        let r = DenseMatrix::from_diag(&[1.0, 0.0]);
        assert!(matches!(
            lsqr(&a, &[1.0, 1.0], &[0.0, 0.0], &r, 3, 0.0),
            Err(Error::Singular { index: 1 })
        ));
    }
}
