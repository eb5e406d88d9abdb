//! The refinement loop shared by the stable solver and its bad variants.

use crate::error::Result;
use crate::linalg::dense_solve::GramFactor;
use crate::linalg::vecops::{all_finite, dist2, norm2};
use crate::linalg::{
    cond_est, default_power_steps, rand_power_norm_est, tri_solve_upper,
    tri_solve_upper_transpose, DenseMatrix,
};
use crate::metrics::ErrorMeter;
use crate::operator::Operator;
use crate::solvers::stopping::StopRule;
use crate::solvers::{
    step_params, DivergenceGuard, IterRecord, SolveResult, SolveTrace, SolverConfig, StopReason,
    Variant,
};

/// How the correction `d_i` is obtained from the current iterate.
pub(crate) enum Correction<'a> {
    /// `d = R^{-1} (R^{-T} (A^T r_i))`
    Triangular(&'a DenseMatrix),
    /// `d = G^{-1} (A^T r_i)` with `G = (SA)^T (SA)` formed explicitly.
    Gram(&'a GramFactor),
    /// `d = R^{-1} (R^{-T} (A^T b - A^T (A x_i)))`
    UnstableResidual { r: &'a DenseMatrix, atb: Vec<f64> },
}

impl Correction<'_> {
    fn direction<O: Operator + ?Sized>(&self, a: &O, x: &[f64], r: &[f64]) -> Result<Vec<f64>> {
        match self {
            Self::Triangular(rf) => {
                let c = a.apply_t(r);
                tri_solve_upper(rf, &tri_solve_upper_transpose(rf, &c)?)
            }
            Self::Gram(g) => Ok(g.solve(&a.apply_t(r))),
            Self::UnstableResidual { r: rf, atb } => {
                let atax = a.apply_t(&a.apply(x));
                let c: Vec<f64> = atb.iter().zip(&atax).map(|(p, q)| p - q).collect();
                tri_solve_upper(rf, &tri_solve_upper_transpose(rf, &c)?)
            }
        }
    }
}

/// Accumulates trace records.
pub(crate) struct Recorder<'m> {
    keep_vectors: bool,
    meter: Option<&'m ErrorMeter>,
    pub records: Vec<IterRecord>,
}

impl<'m> Recorder<'m> {
    pub fn new(keep_vectors: bool, meter: Option<&'m ErrorMeter>) -> Self {
        Self {
            keep_vectors,
            meter,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, iter: usize, x: &[f64], r: &[f64], change: Option<f64>) -> Result<()> {
        let errors = match self.meter {
            Some(m) => Some(m.report(x, r)?),
            None => None,
        };
        self.records.push(IterRecord {
            iter,
            x: self.keep_vectors.then(|| x.to_vec()),
            residual: self.keep_vectors.then(|| r.to_vec()),
            residual_norm: norm2(r),
            residual_change: change,
            errors,
        });
        Ok(())
    }
}

/// Tracks consecutive growth of the residual change.
pub(crate) struct Guard {
    cfg: Option<DivergenceGuard>,
    history: Vec<f64>,
}

impl Guard {
    pub fn new(cfg: Option<DivergenceGuard>) -> Self {
        Self {
            cfg,
            history: Vec::new(),
        }
    }

    /// Records a residual change; true when the run should be declared
    /// divergent.
    pub fn push(&mut self, change: f64) -> bool {
        if !change.is_finite() {
            return true;
        }
        self.history.push(change);
        let Some(g) = self.cfg else {
            return false;
        };
        let h = &self.history;
        if h.len() <= g.steps {
            return false;
        }
        let window = &h[h.len() - g.steps - 1..];
        window.windows(2).all(|w| w[1] > w[0]) && window[g.steps] > g.factor * window[0]
    }
}

/// `normest` and `condest` of the sketch's triangular factor.
pub(crate) fn estimates(r: &DenseMatrix, cfg: &SolverConfig) -> Result<(f64, f64)> {
    let steps = cfg.power_steps.unwrap_or_else(|| default_power_steps(r.cols()));
    let normest = rand_power_norm_est(r, steps, cfg.seed ^ 0x6e6f_726d_6573_7431);
    Ok((normest, cond_est(r)?))
}

/// Runs `x_{i+1} = x_i + alpha d_i + beta (x_i - x_{i-1})` from `x0`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn refine<O: Operator + ?Sized>(
    a: &O,
    b: &[f64],
    x0: Vec<f64>,
    correction: &Correction<'_>,
    r_factor: &DenseMatrix,
    cfg: &SolverConfig,
    meter: Option<&ErrorMeter>,
) -> Result<SolveResult> {
    let n = a.ncols();
    let (alpha, beta) = step_params(cfg.variant, cfg.param_epsilon(n))?;
    let (normest, condest) = estimates(r_factor, cfg)?;
    let rule = cfg.use_stopping_rule.then_some(StopRule {
        normest,
        condest,
        u: cfg.unit_roundoff,
        gamma: cfg.stop_gamma,
        rho: cfg.stop_rho,
    });

    let mut rec = Recorder::new(cfg.record_vectors, meter);
    let mut guard = Guard::new(cfg.divergence);
    let mut x = x0;
    let mut x_prev = x.clone();
    let mut r = a.residual(b, &x);
    rec.push(0, &x, &r, None)?;

    let mut reason = StopReason::MaxIters;
    let mut fired_at = None;
    if !all_finite(&x) {
        reason = StopReason::Diverged;
    } else if rule.is_some_and(|s| s.fires_initially(&r, &x)) {
        fired_at = Some(0);
        if cfg.extra_iterations == 0 {
            reason = StopReason::StoppingRule;
        }
    }

    let mut iterations = 0;
    if reason == StopReason::MaxIters {
        for i in 0..cfg.max_iters {
            let d = correction.direction(a, &x, &r)?;
            let x_next: Vec<f64> = if cfg.variant == Variant::Basic {
                x.iter().zip(&d).map(|(xi, di)| xi + di).collect()
            } else {
                (0..n)
                    .map(|j| x[j] + alpha * d[j] + beta * (x[j] - x_prev[j]))
                    .collect()
            };
            let r_next = a.residual(b, &x_next);
            let change = dist2(&r_next, &r);
            iterations = i + 1;
            rec.push(iterations, &x_next, &r_next, Some(change))?;

            let diverged = !all_finite(&x_next) | guard.push(change);
            if fired_at.is_none() && rule.is_some_and(|s| s.fires(&r_next, &r, &x_next)) {
                fired_at = Some(iterations);
            }
            x_prev = std::mem::replace(&mut x, x_next);
            r = r_next;
            if diverged {
                reason = StopReason::Diverged;
                break;
            }
            if fired_at.is_some_and(|f| iterations >= f + cfg.extra_iterations) {
                reason = StopReason::StoppingRule;
                break;
            }
        }
    }

    Ok(SolveResult {
        solution: x,
        iterations,
        trace: SolveTrace {
            records: rec.records,
            stop_reason: reason,
            rule_fired_at: fired_at,
            normest,
            condest,
        },
        config: cfg.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_needs_consecutive_growth() {
        let mut g = Guard::new(Some(DivergenceGuard::default()));
        for c in [1.0, 2.0, 3.0, 4.0, 5.0] {
            assert!(!g.push(c));
        }
        // 1 -> 12 over five increases
        assert!(g.push(12.0));

        let mut g = Guard::new(Some(DivergenceGuard::default()));
        for c in [1.0, 2.0, 4.0, 3.0, 8.0, 16.0, 32.0, 64.0] {
            assert!(!g.push(c));
        }
        assert!(g.push(128.0));
    }

    #[test]
    fn guard_off_only_flags_non_finite() {
        let mut g = Guard::new(None);
        for k in 0..50 {
            assert!(!g.push(10f64.powi(k)));
        }
        assert!(g.push(f64::NAN));
    }
}
