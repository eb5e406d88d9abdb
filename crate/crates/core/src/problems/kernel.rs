use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::problems::{LsProblem, ProblemMatrix};
use crate::rng::{gaussian_vec, substream};

/// Square-exponential kernel regression on a random subset of centers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConfig {
    /// Bandwidth `sigma` of `exp(-||z - z'||^2 / (2 sigma^2))`.
    pub bandwidth: f64,
    /// Number of centers `n`, the column count of the system.
    pub subset_size: usize,
    pub seed: u64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            bandwidth: 4.0,
            subset_size: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct KernelProblem {
    pub problem: LsProblem,
    /// Row index of the data point behind each column.
    pub centers: Vec<usize>,
    /// Feature columns removed for having zero variance.
    pub dropped_features: Vec<usize>,
}

/// Builds the unregularized kernel least-squares problem
/// `min ||b - K(Z, Z_S) c||` with `S` a uniformly random subset of rows.
///
/// Features are standardized to mean zero and unit variance first;
/// constant columns carry no information and are dropped with a warning.
pub fn kernel_problem(
    points: &DenseMatrix,
    targets: &[f64],
    cfg: &KernelConfig,
) -> Result<KernelProblem> {
    let (m, k) = points.shape();
    if targets.len() != m {
        return Err(Error::Dimension("targets length differs from point count".into()));
    }
    if !(cfg.bandwidth > 0.0) || cfg.subset_size == 0 || cfg.subset_size > m {
        return Err(Error::InvalidParameter(format!(
            "need bandwidth > 0 and 1 <= subset_size <= {m}, got {} and {}",
            cfg.bandwidth, cfg.subset_size
        )));
    }

    let mut z: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut dropped = Vec::new();
    for j in 0..k {
        let col = points.col(j);
        let mean = col.iter().sum::<f64>() / m as f64;
        let var = col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / m as f64;
        if var == 0.0 {
            log::warn!("dropping feature column {j}: zero variance");
            dropped.push(j);
            continue;
        }
        let sd = var.sqrt();
        z.push(col.iter().map(|v| (v - mean) / sd).collect());
    }
    if z.is_empty() {
        return Err(Error::InvalidParameter("every feature column is constant".into()));
    }

    let mut rng = substream(cfg.seed, 1);
    let centers = sample(&mut rng, m, cfg.subset_size).into_vec();
    let scale = -1.0 / (2.0 * cfg.bandwidth * cfg.bandwidth);
    let mut a = DenseMatrix::zeros(m, cfg.subset_size);
    let mut dist = vec![0.0; m];
    for (c, &s) in centers.iter().enumerate() {
        dist.iter_mut().for_each(|d| *d = 0.0);
        for f in &z {
            let zs = f[s];
            for (d, zi) in dist.iter_mut().zip(f) {
                let t = zi - zs;
                *d += t * t;
            }
        }
        for (dst, d) in a.col_mut(c).iter_mut().zip(&dist) {
            *dst = (scale * d).exp();
        }
    }
    Ok(KernelProblem {
        problem: LsProblem {
            a: ProblemMatrix::Dense(a),
            b: targets.to_vec(),
            truth: None,
        },
        centers,
        dropped_features: dropped,
    })
}

/// Synthetic classification-style data: `rows` points drawn from
/// `components` Gaussian blobs in `features` dimensions; the target is the
/// blob label mapped to `{0, 1}` by parity.
pub fn gaussian_mixture(
    rows: usize,
    features: usize,
    components: usize,
    seed: u64,
) -> Result<(DenseMatrix, Vec<f64>)> {
    if rows == 0 || features == 0 || components == 0 {
        return Err(Error::InvalidParameter(
            "rows, features and components must be positive".into(),
        ));
    }
    let mut rng = substream(seed, 1);
    let means: Vec<Vec<f64>> = (0..components)
        .map(|_| gaussian_vec(&mut rng, features).iter().map(|v| 3.0 * v).collect())
        .collect();
    let mut pts = DenseMatrix::zeros(rows, features);
    let mut y = Vec::with_capacity(rows);
    for i in 0..rows {
        let c = rng.random_range(0..components);
        let noise = gaussian_vec(&mut rng, features);
        for j in 0..features {
            pts.set(i, j, means[c][j] + noise[j]);
        }
        y.push((c % 2) as f64);
    }
    Ok((pts, y))
}
