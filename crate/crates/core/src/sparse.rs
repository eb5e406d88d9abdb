use crate::error::{dim_err, Result};
use crate::linalg::DenseMatrix;

/// Compressed sparse row matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCsrMatrix {
    rows: usize,
    cols: usize,
    offsets: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseCsrMatrix {
    /// Validates offsets (monotone, length `rows + 1`) and strictly
    /// increasing in-range column indices within each row.
    pub fn new(
        rows: usize,
        cols: usize,
        offsets: Vec<usize>,
        indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return dim_err("sparse matrix must be nonempty");
        }
        if offsets.len() != rows + 1 || offsets[0] != 0 {
            return dim_err("offsets must have rows + 1 entries starting at 0");
        }
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return dim_err("offsets must be monotone");
        }
        let nnz = offsets[rows];
        if indices.len() != nnz || values.len() != nnz {
            return dim_err("indices/values length differs from nnz");
        }
        for i in 0..rows {
            let row = &indices[offsets[i]..offsets[i + 1]];
            if row.iter().any(|&j| j >= cols) || row.windows(2).any(|w| w[0] >= w[1]) {
                return dim_err(format!("row {i}: column indices out of range or unsorted"));
            }
        }
        if values.iter().any(|v| !v.is_finite()) {
            return dim_err("non-finite value");
        }
        Ok(Self {
            rows,
            cols,
            offsets,
            indices,
            values,
        })
    }

    pub fn from_dense(a: &DenseMatrix) -> Self {
        let (m, n) = a.shape();
        let mut offsets = vec![0];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for i in 0..m {
            for j in 0..n {
                let v = a.get(i, j);
                if v != 0.0 {
                    indices.push(j);
                    values.push(v);
                }
            }
            offsets.push(indices.len());
        }
        Self {
            rows: m,
            cols: n,
            offsets,
            indices,
            values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `(column indices, values)` of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.offsets[i]..self.offsets[i + 1];
        (&self.indices[r.clone()], &self.values[r])
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let (idx, val) = self.row(i);
            for (j, v) in idx.iter().zip(val) {
                out.set(i, *j, *v);
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let (idx, val) = self.row(i);
                idx.iter().zip(val).map(|(j, v)| v * x[*j]).sum()
            })
            .collect()
    }

    pub fn tmul_vec(&self, r: &[f64]) -> Vec<f64> {
        assert_eq!(r.len(), self.rows);
        let mut c = vec![0.0; self.cols];
        for (i, ri) in r.iter().enumerate() {
            let (idx, val) = self.row(i);
            for (j, v) in idx.iter().zip(val) {
                c[*j] += v * ri;
            }
        }
        c
    }

    pub fn frobenius_norm(&self) -> f64 {
        crate::linalg::vecops::norm2(&self.values)
    }
}
