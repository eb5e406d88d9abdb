//! Norm and condition estimates for the triangular factor `R`.

use crate::error::{dim_err, Error, Result};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::svd::svd_values;
use crate::linalg::vecops::norm2;
use crate::rng::{gaussian_vec, seeded};

/// `ceil(log2 n)`, at least one step.
pub fn default_power_steps(n: usize) -> usize {
    let mut steps = 0;
    while (1usize << steps) < n {
        steps += 1;
    }
    steps.max(1)
}

/// Randomized power-method estimate of `||R||` from a Gaussian start.
///
/// Each step applies `R^T R`. The returned Rayleigh-type ratio
/// `||R v|| / ||v||` never exceeds `sigma_max(R)`.
pub fn rand_power_norm_est(r: &DenseMatrix, steps: usize, seed: u64) -> f64 {
    let n = r.cols();
    let mut v = gaussian_vec(&mut seeded(seed), n);
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    for _ in 0..steps.max(1) {
        let w = r.tmul_vec(&r.mul_vec(&v));
        let nw = norm2(&w);
        if nw == 0.0 {
            return 0.0;
        }
        v = w.into_iter().map(|x| x / nw).collect();
    }
    norm2(&r.mul_vec(&v)) / norm2(&v)
}

/// `sigma_max(R) / sigma_min(R)`, computed exactly from the singular values.
pub fn cond_est(r: &DenseMatrix) -> Result<f64> {
    let (n, k) = r.shape();
    if n != k {
        return dim_err("condition estimate needs a square factor");
    }
    if let Some(i) = (0..n).find(|&i| r.get(i, i) == 0.0) {
        return Err(Error::Singular { index: i });
    }
    let s = svd_values(r)?;
    Ok(s[0] / s[n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::householder_qr_econ;
    use crate::rng::gaussian_matrix;

    #[test]
    fn steps_are_ceil_log2() {
        assert_eq!(default_power_steps(1), 1);
        assert_eq!(default_power_steps(2), 1);
        assert_eq!(default_power_steps(50), 6);
        assert_eq!(default_power_steps(64), 6);
        assert_eq!(default_power_steps(65), 7);
    }

    #[test]
    fn identity_is_exact() {
        for seed in 0..20 {
            assert_eq!(rand_power_norm_est(&DenseMatrix::identity(7), 3, seed), 1.0);
        }
    }

    #[test]
    fn never_exceeds_sigma_max() {
        let r = DenseMatrix::from_diag(&[5.0, 0.0]);
        for seed in 0..20 {
            let e = rand_power_norm_est(&r, 1, seed);
            assert!(e <= 5.0 && e > 0.0);
        }
    }

    #[test]
    fn random_factor_within_half_of_norm() {
        let mut hits = 0;
        for seed in 0..100 {
            let mut rng = seeded(1000 + seed);
            let r = householder_qr_econ(&gaussian_matrix(&mut rng, 50, 50)).unwrap().r;
            let smax = svd_values(&r).unwrap()[0];
            let e = rand_power_norm_est(&r, 6, seed);
            assert!(e <= smax * (1.0 + 1e-12));
            if e >= 0.5 * smax {
                hits += 1;
            }
        }
        assert!(hits >= 99, "{hits}/100");
    }

    #[test]
    fn condition_of_simple_factors() {
        assert_eq!(cond_est(&DenseMatrix::identity(4)).unwrap(), 1.0);
        let d = DenseMatrix::from_diag(&[1.0, 1e-8]);
        assert!((cond_est(&d).unwrap() / 1e8 - 1.0).abs() < 1e-12);
        assert!(matches!(
            cond_est(&DenseMatrix::from_diag(&[1.0, 0.0])),
            Err(Error::Singular { index: 1 })
        ));
    }

    #[test]
    fn random_triangular_matches_svd_ratio() {
        let mut rng = seeded(77);
        let r = householder_qr_econ(&gaussian_matrix(&mut rng, 12, 12)).unwrap().r;
        let s = svd_values(&r).unwrap();
        let c = cond_est(&r).unwrap();
        assert!((c / (s[0] / s[11]) - 1.0).abs() <= 1e-10);
    }
}
