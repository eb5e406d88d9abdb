use crate::error::{Error, Result};
use crate::linalg::vecops::{axpy, norm2};
use crate::problems::{LsProblem, ProblemMatrix, Truth};
use crate::rng::{gaussian_vec, haar_columns, substream};

/// Controlled-spectrum problem `A = U_1 Sigma V^T`, `b = A x + r`.
///
/// `U_1` holds the first `n` columns of a Haar orthogonal `m x m` matrix
/// and `V` is Haar `n x n`. `Sigma` is logarithmically equispaced from `1`
/// down to `1/kappa`. `x` is a random unit vector and `r` a random vector
/// of norm `beta` in the orthogonal complement of `range(A)`, so `x` is the
/// exact least-squares solution.
///
/// ```
/// use itsketch::problems::gen_randsvd;
/// let p = gen_randsvd(200, 10, 1e4, 1e-3, 7).unwrap();
/// let t = p.truth.unwrap();
/// assert!((t.beta - 1e-3).abs() < 1e-15);
/// ```
pub fn gen_randsvd(m: usize, n: usize, kappa: f64, beta: f64, seed: u64) -> Result<LsProblem> {
    if n < 2 || m <= n {
        return Err(Error::InvalidParameter(format!(
            "need m > n >= 2, got m={m}, n={n}"
        )));
    }
    if !(kappa >= 1.0 && kappa.is_finite()) || !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "need finite kappa >= 1 and beta >= 0, got {kappa}, {beta}"
        )));
    }
    let u1 = haar_columns(&mut substream(seed, 1), m, n);
    let v = haar_columns(&mut substream(seed, 2), n, n);
    let sigma = log_spectrum(n, kappa);

    // A = (U_1 Sigma) V^T
    let mut us = u1.clone();
    for (j, s) in sigma.iter().enumerate() {
        us.col_mut(j).iter_mut().for_each(|x| *x *= s);
    }
    let a = us.matmul(&v.transpose())?;

    let mut x = gaussian_vec(&mut substream(seed, 3), n);
    let nx = norm2(&x);
    x.iter_mut().for_each(|v| *v /= nx);

    let mut r = vec![0.0; m];
    if beta > 0.0 {
        let mut g = gaussian_vec(&mut substream(seed, 4), m);
        // Project out range(U_1) twice; one pass leaves O(u) leakage.
        for _ in 0..2 {
            let c = u1.tmul_vec(&g);
            axpy(-1.0, &u1.mul_vec(&c), &mut g);
        }
        let ng = norm2(&g);
        r = g.into_iter().map(|v| beta * (v / ng)).collect();
    }

    let mut b = a.mul_vec(&x);
    for (bi, ri) in b.iter_mut().zip(&r) {
        *bi += ri;
    }
    Ok(LsProblem {
        a: ProblemMatrix::Dense(a),
        b,
        truth: Some(Truth {
            x,
            r,
            kappa,
            beta,
        }),
    })
}

/// `sigma_j = kappa^(-j/(n-1))`, descending, with exact endpoints.
fn log_spectrum(n: usize, kappa: f64) -> Vec<f64> {
    let mut s: Vec<f64> = (0..n)
        .map(|j| kappa.powf(-(j as f64) / (n - 1) as f64))
        .collect();
    s[0] = 1.0;
    s[n - 1] = 1.0 / kappa;
    s
}
