use crate::error::{dim_err, Result};
use crate::linalg::vecops::norm2;
use crate::metrics::{forward_error, residual_error_or_absolute, wedin_bounds, BackwardErrorContext};

/// Errors of one computed solution against the known truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub fe: f64,
    pub re: f64,
    /// `re` is `||r(x_hat)|| / ||b||` because the true residual is zero.
    pub re_degenerate: bool,
    pub be: Option<f64>,
    /// Absolute Wedin bounds, when requested and the hypothesis holds.
    pub wedin_fe_bound: Option<f64>,
    pub wedin_re_bound: Option<f64>,
}

/// Ground truth plus the optional expensive pieces needed to score
/// iterates repeatedly.
#[derive(Debug, Clone)]
pub struct ErrorMeter {
    x_true: Vec<f64>,
    r_true: Vec<f64>,
    norm_b: f64,
    be: Option<BackwardErrorContext>,
    wedin: Option<(f64, f64)>,
}

impl ErrorMeter {
    pub fn new(x_true: &[f64], r_true: &[f64], norm_b: f64) -> Self {
        Self {
            x_true: x_true.to_vec(),
            r_true: r_true.to_vec(),
            norm_b,
            be: None,
            wedin: None,
        }
    }

    /// Also report the backward error (opt in: it costs a thin SVD up front
    /// and `O(mn)` per evaluation).
    pub fn with_backward_error(mut self, ctx: BackwardErrorContext) -> Self {
        self.be = Some(ctx);
        self
    }

    /// Attach Wedin bounds at perturbation size `epsilon`; skipped silently
    /// when `epsilon * kappa > 0.1`.
    pub fn with_wedin(mut self, kappa: f64, norm_a: f64, epsilon: f64) -> Self {
        self.wedin = wedin_bounds(
            kappa,
            norm_a,
            norm2(&self.x_true),
            norm2(&self.r_true),
            epsilon,
        )
        .ok();
        self
    }

    pub fn has_backward_error(&self) -> bool {
        self.be.is_some()
    }

    pub fn x_true(&self) -> &[f64] {
        &self.x_true
    }

    pub fn r_true(&self) -> &[f64] {
        &self.r_true
    }

    pub fn report(&self, x_hat: &[f64], r_hat: &[f64]) -> Result<ErrorReport> {
        if x_hat.len() != self.x_true.len() || r_hat.len() != self.r_true.len() {
            return dim_err("iterate does not match the problem shape");
        }
        let fe = forward_error(&self.x_true, x_hat)?;
        let (re, re_degenerate) = residual_error_or_absolute(&self.r_true, r_hat, self.norm_b);
        let be = match &self.be {
            Some(ctx) if crate::linalg::vecops::all_finite(x_hat) => {
                Some(ctx.relative(x_hat, r_hat)?)
            }
            Some(_) => Some(f64::NAN),
            None => None,
        };
        Ok(ErrorReport {
            fe,
            re,
            re_degenerate,
            be,
            wedin_fe_bound: self.wedin.map(|w| w.0),
            wedin_re_bound: self.wedin.map(|w| w.1),
        })
    }
}
