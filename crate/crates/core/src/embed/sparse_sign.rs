use rand::Rng;

use crate::embed::Embedding;
use crate::error::{dim_err, Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::seeded;
use crate::sparse::SparseCsrMatrix;

/// Sparse sign embedding: each of the `m` columns holds exactly `zeta`
/// entries `+-1/sqrt(zeta)` in distinct, uniformly random rows.
///
/// Stored column-compressed: column `j` owns `rows[j*zeta..(j+1)*zeta]`
/// and the matching sign bits.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSignEmbedding {
    d: usize,
    m: usize,
    zeta: usize,
    rows: Vec<u32>,
    negative: Vec<bool>,
    scale: f64,
}

impl SparseSignEmbedding {
    pub fn new(d: usize, m: usize, zeta: usize, seed: u64) -> Result<Self> {
        if zeta == 0 || zeta > d {
            return Err(Error::InvalidParameter(format!(
                "zeta must lie in 1..=d, got zeta={zeta}, d={d}"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        if d > u32::MAX as usize {
            return Err(Error::TooLarge {
                what: "sparse sign embedding",
                size: d,
                cap: u32::MAX as usize,
            });
        }
        let mut rng = seeded(seed);
        let mut rows = Vec::with_capacity(m * zeta);
        let mut negative = Vec::with_capacity(m * zeta);
        for _ in 0..m {
            let start = rows.len();
            // Floyd's algorithm: zeta distinct draws from 0..d in O(zeta).
            for j in (d - zeta)..d {
                let t = rng.random_range(0..=j) as u32;
                let col = &rows[start..];
                rows.push(if col.contains(&t) { j as u32 } else { t });
            }
            for _ in 0..zeta {
                negative.push(rng.random::<bool>());
            }
        }
        Ok(Self {
            d,
            m,
            zeta,
            rows,
            negative,
            scale: 1.0 / (zeta as f64).sqrt(),
        })
    }

    pub fn zeta(&self) -> usize {
        self.zeta
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Row indices and signed values of column `j`.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = j * self.zeta..(j + 1) * self.zeta;
        self.rows[r.clone()]
            .iter()
            .zip(&self.negative[r])
            .map(|(&i, &neg)| (i as usize, if neg { -self.scale } else { self.scale }))
    }

    fn check_rows(&self, rows: usize) -> Result<()> {
        if rows != self.m {
            return dim_err(format!("embedding expects {} rows, got {rows}", self.m));
        }
        Ok(())
    }
}

impl Embedding for SparseSignEmbedding {
    fn output_dim(&self) -> usize {
        self.d
    }

    fn input_dim(&self) -> usize {
        self.m
    }

    fn apply_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_rows(v.len())?;
        let mut out = vec![0.0; self.d];
        for (j, vj) in v.iter().enumerate() {
            if *vj != 0.0 {
                for (i, s) in self.column(j) {
                    out[i] += s * vj;
                }
            }
        }
        Ok(out)
    }

    fn apply_dense(&self, a: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_rows(a.rows())?;
        let mut out = DenseMatrix::zeros(self.d, a.cols());
        for k in 0..a.cols() {
            let src = a.col(k);
            let dst = out.col_mut(k);
            for (j, aj) in src.iter().enumerate() {
                if *aj != 0.0 {
                    for (i, s) in self.column(j) {
                        dst[i] += s * aj;
                    }
                }
            }
        }
        Ok(out)
    }

    fn apply_sparse(&self, a: &SparseCsrMatrix) -> Result<DenseMatrix> {
        self.check_rows(a.rows())?;
        let mut out = DenseMatrix::zeros(self.d, a.cols());
        for j in 0..a.rows() {
            let (idx, val) = a.row(j);
            for (k, v) in idx.iter().zip(val) {
                let dst = out.col_mut(*k);
                for (i, s) in self.column(j) {
                    dst[i] += s * v;
                }
            }
        }
        Ok(out)
    }

    fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.d, self.m);
        for j in 0..self.m {
            for (i, s) in self.column(j) {
                out.set(i, j, s);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vecops::norm2;
    use crate::rng::gaussian_matrix;

    #[test]
    fn full_columns_when_zeta_equals_d() {
        let s = SparseSignEmbedding::new(4, 3, 4, 1).unwrap();
        let dense = s.to_dense();
        for j in 0..3 {
            for i in 0..4 {
                assert_eq!(dense.get(i, j).abs(), 0.5);
            }
        }
    }

    #[test]
    fn rejects_bad_zeta() {
        assert!(SparseSignEmbedding::new(4, 3, 5, 1).is_err());
        assert!(SparseSignEmbedding::new(4, 3, 0, 1).is_err());
    }

    #[test]
    fn columns_have_distinct_rows_and_unit_norm() {
        let s = SparseSignEmbedding::new(30, 500, 8, 3).unwrap();
        for j in 0..500 {
            let mut rows: Vec<usize> = s.column(j).map(|(i, _)| i).collect();
            rows.sort_unstable();
            rows.dedup();
            assert_eq!(rows.len(), 8);
            let vals: Vec<f64> = s.column(j).map(|(_, v)| v).collect();
            assert!((norm2(&vals) - 1.0).abs() <= 2.0 * f64::EPSILON);
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let a = SparseSignEmbedding::new(20, 100, 4, 9).unwrap();
        let b = SparseSignEmbedding::new(20, 100, 4, 9).unwrap();
        let c = SparseSignEmbedding::new(20, 100, 4, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn apply_matches_densified_product() {
        let s = SparseSignEmbedding::new(30, 50, 3, 5).unwrap();
        let a = gaussian_matrix(&mut seeded(6), 50, 5);
        let fast = s.apply_dense(&a).unwrap();
        let slow = s.to_dense().matmul(&a).unwrap();
        assert!(fast.sub(&slow).unwrap().max_abs() <= 1e-15 * slow.max_abs().max(1.0));

        let sp = SparseCsrMatrix::from_dense(&a);
        let via_sparse = s.apply_sparse(&sp).unwrap();
        assert!(via_sparse.sub(&slow).unwrap().max_abs() <= 1e-15 * slow.max_abs().max(1.0));

        let v = a.col(0);
        let sv = s.apply_vec(v).unwrap();
        let expect = s.to_dense().mul_vec(v);
        for (x, y) in sv.iter().zip(&expect) {
            assert!((x - y).abs() <= 1e-15);
        }
    }

    #[test]
    fn basis_vectors_pick_out_columns() {
        let s = SparseSignEmbedding::new(10, 6, 2, 2).unwrap();
        let dense = s.to_dense();
        for j in 0..6 {
            let mut e = vec![0.0; 6];
            e[j] = 1.0;
            assert_eq!(s.apply_vec(&e).unwrap(), dense.col(j));
        }
        assert!(s.apply_vec(&[0.0; 6]).unwrap().iter().all(|v| *v == 0.0));
        assert!(s.apply_vec(&[0.0; 5]).is_err());
    }

    #[test]
    fn isotropic_on_average() {
        let (d, m, trials) = (40, 200, 500);
        let mut acc = vec![0.0; m * m];
        for seed in 0..trials {
            let s = SparseSignEmbedding::new(d, m, 8, seed).unwrap().to_dense();
            let g = s.tmatmul(&s).unwrap();
            for (a, v) in acc.iter_mut().zip(g.as_slice()) {
                *a += v;
            }
        }
        for j in 0..m {
            for i in 0..m {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((acc[i + j * m] / trials as f64 - target).abs() <= 0.1);
            }
        }
    }
}
