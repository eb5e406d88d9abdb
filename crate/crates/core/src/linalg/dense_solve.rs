//! Gram-matrix factorizations: Cholesky with partially pivoted LU fallback.
//!
//! These exist for the unstable "form the Gram matrix" baseline and as
//! test oracles. The stable solvers never call them.

use crate::error::{dim_err, Error, Result};
use crate::linalg::dense::DenseMatrix;

/// Lower Cholesky factor `L` with `G = L L^T`, or `None` on a nonpositive pivot.
pub fn cholesky(g: &DenseMatrix) -> Option<DenseMatrix> {
    let n = g.rows();
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = g.get(j, j);
        for k in 0..j {
            d -= l.get(j, k) * l.get(j, k);
        }
        if d <= 0.0 || !d.is_finite() {
            return None;
        }
        let ljj = d.sqrt();
        l.set(j, j, ljj);
        for i in (j + 1)..n {
            let mut s = g.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / ljj);
        }
    }
    Some(l)
}

/// `P A = L U` with row partial pivoting, packed in one matrix.
#[derive(Debug, Clone)]
pub struct Lu {
    packed: DenseMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        let (n, k) = a.shape();
        if n != k {
            return dim_err("LU needs a square matrix");
        }
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for j in 0..n {
            let p = (j..n)
                .max_by(|&x, &y| lu.get(x, j).abs().total_cmp(&lu.get(y, j).abs()))
                .unwrap();
            if lu.get(p, j) == 0.0 {
                return Err(Error::Singular { index: j });
            }
            if p != j {
                perm.swap(p, j);
                for c in 0..n {
                    let t = lu.get(p, c);
                    lu.set(p, c, lu.get(j, c));
                    lu.set(j, c, t);
                }
            }
            let piv = lu.get(j, j);
            for i in (j + 1)..n {
                let f = lu.get(i, j) / piv;
                lu.set(i, j, f);
                if f != 0.0 {
                    for c in (j + 1)..n {
                        lu.set(i, c, lu.get(i, c) - f * lu.get(j, c));
                    }
                }
            }
        }
        Ok(Self { packed: lu, perm })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.perm.len();
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.packed.get(i, k) * y[k];
            }
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                y[i] -= self.packed.get(i, k) * y[k];
            }
            y[i] /= self.packed.get(i, i);
        }
        y
    }
}

pub fn lu_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != a.rows() {
        return dim_err("rhs length differs from order");
    }
    Ok(Lu::new(a)?.solve(b))
}

/// Solver for a symmetric positive (semi)definite Gram matrix.
#[derive(Debug, Clone)]
pub enum GramFactor {
    Cholesky(DenseMatrix),
    Lu(Lu),
}

impl GramFactor {
    /// Cholesky if it succeeds, otherwise LU with partial pivoting.
    pub fn new(g: &DenseMatrix) -> Result<Self> {
        match cholesky(g) {
            Some(l) => Ok(GramFactor::Cholesky(l)),
            None => {
                log::debug!("Cholesky broke down; falling back to partially pivoted LU");
                Ok(GramFactor::Lu(Lu::new(g)?))
            }
        }
    }

    pub fn is_cholesky(&self) -> bool {
        matches!(self, GramFactor::Cholesky(_))
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        match self {
            GramFactor::Lu(lu) => lu.solve(b),
            GramFactor::Cholesky(l) => {
                let n = b.len();
                let mut y = b.to_vec();
                for i in 0..n {
                    for k in 0..i {
                        y[i] -= l.get(i, k) * y[k];
                    }
                    y[i] /= l.get(i, i);
                }
                for i in (0..n).rev() {
                    for k in (i + 1)..n {
                        y[i] -= l.get(k, i) * y[k];
                    }
                    y[i] /= l.get(i, i);
                }
                y
            }
        }
    }
}
