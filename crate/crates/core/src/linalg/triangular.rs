use crate::error::{dim_err, Error, Result};
use crate::linalg::dense::DenseMatrix;

fn check(r: &DenseMatrix, c: &[f64]) -> Result<()> {
    let (n, k) = r.shape();
    if n != k {
        return dim_err(format!("triangular factor must be square, got {n}x{k}"));
    }
    if c.len() != n {
        return dim_err(format!("rhs has length {}, expected {n}", c.len()));
    }
    if let Some(i) = (0..n).find(|&i| r.get(i, i) == 0.0) {
        return Err(Error::Singular { index: i });
    }
    Ok(())
}

/// Back substitution for `R y = c`, `R` upper triangular.
///
/// Entries below the diagonal are never read.
pub fn tri_solve_upper(r: &DenseMatrix, c: &[f64]) -> Result<Vec<f64>> {
    check(r, c)?;
    let n = c.len();
    let mut y = c.to_vec();
    // column-oriented: after fixing y[j], eliminate it from rows above
    for j in (0..n).rev() {
        let col = r.col(j);
        y[j] /= col[j];
        let yj = y[j];
        for i in 0..j {
            y[i] -= col[i] * yj;
        }
    }
    Ok(y)
}

/// Forward substitution for `R^T y = c`, `R` upper triangular.
pub fn tri_solve_upper_transpose(r: &DenseMatrix, c: &[f64]) -> Result<Vec<f64>> {
    check(r, c)?;
    let n = c.len();
    let mut y = c.to_vec();
    // row j of R^T is column j of R
    for j in 0..n {
        let col = r.col(j);
        let s: f64 = col[..j].iter().zip(&y[..j]).map(|(a, b)| a * b).sum();
        y[j] = (y[j] - s) / col[j];
    }
    Ok(y)
}

/// `A R^{-1}` computed row by row through `R^T y = a_i`.
pub fn right_divide_upper(a: &DenseMatrix, r: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols() != r.rows() {
        return dim_err("A R^{-1}: column count of A differs from order of R");
    }
    let (m, n) = a.shape();
    let mut out = DenseMatrix::zeros(m, n);
    for i in 0..m {
        let y = tri_solve_upper_transpose(r, &a.row(i))?;
        for (j, v) in y.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dense_solve::lu_solve;
    use crate::linalg::vecops::{dist2, norm2};
    use crate::rng::{gaussian_matrix, seeded};

    fn well_conditioned_upper(seed: u64, n: usize) -> DenseMatrix {
        let mut rng = seeded(seed);
        let g = gaussian_matrix(&mut rng, n, n);
        DenseMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => 0.3 * g.get(i, j),
            std::cmp::Ordering::Equal => 2.0 + g.get(i, j).abs(),
            std::cmp::Ordering::Greater => 0.0,
        })
    }

    #[test]
    fn identity_and_diagonal() {
        let c = [1.5, -2.0, 3.25];
        assert_eq!(tri_solve_upper(&DenseMatrix::identity(3), &c).unwrap(), c);
        assert_eq!(tri_solve_upper_transpose(&DenseMatrix::identity(3), &c).unwrap(), c);
        let d = DenseMatrix::from_diag(&[2.0, 4.0]);
        assert_eq!(tri_solve_upper(&d, &[2.0, 4.0]).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn two_by_two_transpose() {
        let r = DenseMatrix::from_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert_eq!(tri_solve_upper_transpose(&r, &[1.0, 2.0]).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn zero_pivot_is_singular() {
        let r = DenseMatrix::from_diag(&[1.0, 0.0, 2.0]);
        assert!(matches!(
            tri_solve_upper(&r, &[1.0; 3]),
            Err(Error::Singular { index: 1 })
        ));
        assert!(tri_solve_upper_transpose(&r, &[1.0; 3]).is_err());
    }

    #[test]
    fn random_residual() {
        let r = well_conditioned_upper(5, 10);
        let c: Vec<f64> = (0..10).map(|i| 1.0 + i as f64).collect();
        let y = tri_solve_upper(&r, &c).unwrap();
        assert!(dist2(&r.mul_vec(&y), &c) / norm2(&c) <= 1e-13);
    }

    #[test]
    fn two_solves_match_dense_normal_equations() {
        let r = well_conditioned_upper(9, 10);
        let c: Vec<f64> = (0..10).map(|i| (i as f64 * 0.7).cos()).collect();
        let y = tri_solve_upper(&r, &tri_solve_upper_transpose(&r, &c).unwrap()).unwrap();
        let rtr = r.tmatmul(&r).unwrap();
        let oracle = lu_solve(&rtr, &c).unwrap();
        assert!(dist2(&y, &oracle) / norm2(&oracle) <= 1e-12);
    }
}
