#![allow(dead_code)]

use itsketch::linalg::vecops::{dot, norm2};
use itsketch::DenseMatrix;

pub const U: f64 = f64::EPSILON / 2.0;

/// Minimal-norm `E` with `E x = p` and `E^T y = q` (requires `y^T p = q^T x`).
pub fn min_norm_two_sided(x: &[f64], p: &[f64], y: &[f64], q: &[f64]) -> DenseMatrix {
    let (m, n) = (p.len(), x.len());
    let xx = dot(x, x);
    let yy = dot(y, y);
    let yp = dot(y, p);
    DenseMatrix::from_fn(m, n, |i, j| {
        let mut e = p[i] * x[j] / xx;
        if yy > 0.0 {
            e += y[i] * q[j] / yy - yp * y[i] * x[j] / (xx * yy);
        }
        e
    })
}

/// Cheapest perturbation making `x_hat` optimal with new residual
/// `y = b/2 + (||b||/2) w/||w||`. Every feasible perturbation is this one
/// plus a term `F` with `F x_hat = 0`, `F^T y = 0`.
pub fn perturbation_for(a: &DenseMatrix, b: &[f64], x_hat: &[f64], w: &[f64]) -> DenseMatrix {
    let nb = norm2(b);
    let nw = norm2(w);
    let y: Vec<f64> = b
        .iter()
        .zip(w)
        .map(|(bi, wi)| 0.5 * bi + 0.5 * nb * wi / nw)
        .collect();
    let ax = a.mul_vec(x_hat);
    let p: Vec<f64> = (0..b.len()).map(|i| b[i] - ax[i] - y[i]).collect();
    let q: Vec<f64> = a.tmul_vec(&y).iter().map(|v| -v).collect();
    min_norm_two_sided(x_hat, &p, &y, &q)
}

/// `||(A+E)^T (b - (A+E) x)||`
pub fn normal_equation_defect(a: &DenseMatrix, e: &DenseMatrix, b: &[f64], x: &[f64]) -> f64 {
    let ae = DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j) + e.get(i, j));
    let r: Vec<f64> = b.iter().zip(ae.mul_vec(x)).map(|(bi, v)| bi - v).collect();
    norm2(&ae.tmul_vec(&r))
}

/// Nelder–Mead minimization of `f` from `x0` with initial step `step`.
pub fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], step: f64, iters: usize) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    for _ in 0..iters {
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
        vals = idx.iter().map(|&i| vals[i]).collect();
        if (vals[n] - vals[0]).abs() <= 1e-15 * vals[0].abs().max(1e-300) {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            (0..n).map(|k| centroid[k] + t * (simplex[n][k] - centroid[k])).collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                vals[n] = fe;
            } else {
                simplex[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            simplex[n] = xr;
            vals[n] = fr;
        } else {
            let xc = if fr < vals[n] { along(-0.5) } else { along(0.5) };
            let fc = f(&xc);
            if fc < vals[n].min(fr) {
                simplex[n] = xc;
                vals[n] = fc;
            } else {
                for i in 1..=n {
                    simplex[i] = (0..n)
                        .map(|k| simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]))
                        .collect();
                    vals[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
    (simplex[best].clone(), vals[best])
}

/// Geometric mean of the last `k` entries.
pub fn tail_geomean(v: &[f64], k: usize) -> f64 {
    let t = &v[v.len() - k..];
    (t.iter().map(|x| x.ln()).sum::<f64>() / k as f64).exp()
}
