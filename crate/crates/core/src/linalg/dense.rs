use std::fmt;

use crate::error::{dim_err, Error, Result};
use crate::linalg::vecops::{axpy, dot};

/// Dense real matrix in column-major order.
///
/// Entry `(i, j)` lives at `data[i + j * rows]`, so each column is a
/// contiguous slice. Householder updates, triangular solves and the
/// sketch application all stream whole columns.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Wraps column-major `data`. Rejects empty shapes and non-finite entries.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return dim_err(format!("matrix must be nonempty, got {rows}x{cols}"));
        }
        if data.len() != rows * cols {
            return dim_err(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            ));
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: k % rows,
                col: k / rows,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row slices; handy for small literals.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return dim_err("ragged rows");
        }
        let mut data = vec![0.0; m * n];
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                data[i + j * m] = *v;
            }
        }
        Self::from_col_major(m, n, data)
    }

    /// Builds a matrix from a closure `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be nonempty");
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be nonempty");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.data[i + i * n] = 1.0;
        }
        out
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut out = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            out.data[i + i * n] = *d;
        }
        out
    }

    /// A single column matrix.
    pub fn from_column(v: &[f64]) -> Result<Self> {
        Self::from_col_major(v.len(), 1, v.to_vec())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i + j * self.rows]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i + j * self.rows] = v;
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        let m = self.rows;
        &mut self.data[j * m..(j + 1) * m]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// `y = A x`
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "mul_vec: length mismatch");
        let mut y = vec![0.0; self.rows];
        for (j, xj) in x.iter().enumerate() {
            if *xj != 0.0 {
                axpy(*xj, self.col(j), &mut y);
            }
        }
        y
    }

    /// `c = A^T r`
    pub fn tmul_vec(&self, r: &[f64]) -> Vec<f64> {
        assert_eq!(r.len(), self.rows, "tmul_vec: length mismatch");
        (0..self.cols).map(|j| dot(self.col(j), r)).collect()
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return dim_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let bj = other.col(j);
            let oj = out.col_mut(j);
            for (k, bkj) in bj.iter().enumerate() {
                if *bkj != 0.0 {
                    axpy(*bkj, &self.data[k * self.rows..(k + 1) * self.rows], oj);
                }
            }
        }
        Ok(out)
    }

    /// `A^T B` without materializing the transpose.
    pub fn tmatmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows {
            return dim_err(format!(
                "cannot form A^T B for {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(DenseMatrix::from_fn(self.cols, other.cols, |i, j| {
            dot(self.col(i), other.col(j))
        }))
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.shape() != other.shape() {
            return dim_err("shape mismatch in subtraction");
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scaled(&self, alpha: f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| alpha * v).collect(),
        }
    }

    /// Horizontal concatenation `[self, other]`.
    pub fn hstack(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows {
            return dim_err("hstack: row counts differ");
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Copy of columns `start..end`.
    pub fn columns(&self, start: usize, end: usize) -> DenseMatrix {
        assert!(start < end && end <= self.cols);
        DenseMatrix {
            rows: self.rows,
            cols: end - start,
            data: self.data[start * self.rows..end * self.rows].to_vec(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        crate::linalg::vecops::norm2(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.cols).all(|j| ((j + 1)..self.rows).all(|i| self.get(i, j) == 0.0))
    }

    /// `||A^T A - I||_F`, the orthonormality defect of the columns.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.tmatmul(self).expect("square Gram");
        let mut s = 0.0;
        for j in 0..g.cols {
            for i in 0..g.rows {
                let t = g.get(i, j) - if i == j { 1.0 } else { 0.0 };
                s += t * t;
            }
        }
        s.sqrt()
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            let row: Vec<String> = (0..self.cols.min(8))
                .map(|j| format!("{:>11.4e}", self.get(i, j)))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_major_layout() {
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]).unwrap();
        assert_eq!(a.as_slice(), &[1.0, 3.0, 5.0, 2.0, 4.0, 6.0]);
        assert_eq!(a.col(1), &[2.0, 4.0, 6.0]);
        assert_eq!(a.row(2), vec![5.0, 6.0]);
    }

    #[test]
    fn rejects_bad_shapes_and_nan() {
        assert!(DenseMatrix::from_col_major(0, 3, vec![]).is_err());
        assert!(DenseMatrix::from_col_major(2, 2, vec![1.0; 3]).is_err());
        assert!(matches!(
            DenseMatrix::from_col_major(2, 1, vec![1.0, f64::NAN]),
            Err(Error::NonFinite { row: 1, col: 0 })
        ));
    }

    #[test]
    fn products_agree() {
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]).unwrap();
        let x = [1.0, -1.0];
        assert_eq!(a.mul_vec(&x), vec![-1.0, -1.0, -1.0]);
        assert_eq!(a.tmul_vec(&[1.0, 0.0, 1.0]), vec![6.0, 8.0]);
        let ata = a.tmatmul(&a).unwrap();
        let ata2 = a.transpose().matmul(&a).unwrap();
        assert_eq!(ata, ata2);
        assert_eq!(ata.get(0, 1), 44.0);
    }
}
