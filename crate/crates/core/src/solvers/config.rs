use crate::error::{Error, Result};

/// Update rule of iterative sketching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `x_{i+1} = x_i + d_i`
    Basic,
    /// `x_{i+1} = x_i + alpha d_i`
    Damped,
    /// `x_{i+1} = x_i + alpha d_i + beta (x_i - x_{i-1})`
    Momentum,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Self::Basic => "basic",
            Self::Damped => "damped",
            Self::Momentum => "momentum",
        }
    }
}

/// Starting point of an iterative solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Init {
    SketchAndSolve,
    Zero,
}

/// Stops a run whose residual change keeps growing.
///
/// Fires when the residual change has increased for `steps` consecutive
/// iterations and grown by more than `factor` over that window, or when an
/// iterate becomes non-finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceGuard {
    pub steps: usize,
    pub factor: f64,
}

impl Default for DivergenceGuard {
    fn default() -> Self {
        Self {
            steps: 5,
            factor: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Embedding dimension.
    pub d: usize,
    /// Nonzeros per column of the sparse sign embedding.
    pub zeta: usize,
    pub variant: Variant,
    pub init: Init,
    /// Iteration cap `q`.
    pub max_iters: usize,
    /// Unit roundoff (or target accuracy) in the stopping rule.
    pub unit_roundoff: f64,
    pub stop_gamma: f64,
    pub stop_rho: f64,
    /// Apply the residual-change stopping rule. When off, runs `max_iters`.
    pub use_stopping_rule: bool,
    /// Iterations to keep going after the stopping rule fires.
    pub extra_iterations: usize,
    /// Distortion used for damping/momentum parameters; `sqrt(n/d)` if unset.
    pub epsilon_for_params: Option<f64>,
    /// Power-method steps for `normest`; `ceil(log2 n)` if unset.
    pub power_steps: Option<usize>,
    pub divergence: Option<DivergenceGuard>,
    /// Keep `x_i` and `r_i` in the trace.
    pub record_vectors: bool,
    /// LSQR relative tolerance on `||M^T r|| / (||M|| ||r||)`; 0 runs all
    /// `max_iters` steps.
    pub lsqr_rtol: f64,
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            zeta: 8,
            variant: Variant::Basic,
            init: Init::SketchAndSolve,
            max_iters: 100,
            unit_roundoff: f64::EPSILON / 2.0,
            stop_gamma: 1.0,
            stop_rho: 0.04,
            use_stopping_rule: true,
            extra_iterations: 0,
            epsilon_for_params: None,
            power_steps: None,
            divergence: Some(DivergenceGuard::default()),
            record_vectors: true,
            lsqr_rtol: 0.0,
            seed: 0,
        }
    }

    pub fn variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }

    pub fn init(mut self, i: Init) -> Self {
        self.init = i;
        self
    }

    pub fn max_iters(mut self, q: usize) -> Self {
        self.max_iters = q;
        self
    }

    pub fn seed(mut self, s: u64) -> Self {
        self.seed = s;
        self
    }

    pub fn zeta(mut self, z: usize) -> Self {
        self.zeta = z;
        self
    }

    /// Runs exactly `max_iters` iterations, ignoring the stopping rule.
    pub fn fixed_iterations(mut self, q: usize) -> Self {
        self.max_iters = q;
        self.use_stopping_rule = false;
        self
    }

    pub fn extra_iterations(mut self, k: usize) -> Self {
        self.extra_iterations = k;
        self
    }

    pub fn divergence(mut self, g: Option<DivergenceGuard>) -> Self {
        self.divergence = g;
        self
    }

    pub fn record_vectors(mut self, on: bool) -> Self {
        self.record_vectors = on;
        self
    }

    pub fn epsilon_for_params(mut self, eps: f64) -> Self {
        self.epsilon_for_params = Some(eps);
        self
    }

    pub fn unit_roundoff(mut self, u: f64) -> Self {
        self.unit_roundoff = u;
        self
    }

    /// `epsilon_for_params`, defaulting to `sqrt(n/d)`.
    pub fn param_epsilon(&self, n: usize) -> f64 {
        self.epsilon_for_params
            .unwrap_or_else(|| (n as f64 / self.d as f64).sqrt())
    }

    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        if n == 0 || m < n {
            return Err(Error::Dimension(format!(
                "need a tall matrix, got {m}x{n}"
            )));
        }
        if self.d < n {
            return Err(Error::InvalidParameter(format!(
                "embedding dimension d={} is below n={n}",
                self.d
            )));
        }
        if self.zeta == 0 || self.zeta > self.d {
            return Err(Error::InvalidParameter(format!(
                "zeta={} must lie in 1..=d",
                self.zeta
            )));
        }
        if !(self.unit_roundoff > 0.0 && self.unit_roundoff < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "unit roundoff {} outside (0, 1)",
                self.unit_roundoff
            )));
        }
        if !(self.stop_gamma >= 0.0 && self.stop_rho >= 0.0) {
            return Err(Error::InvalidParameter("stopping constants must be >= 0".into()));
        }
        if let Some(g) = self.divergence {
            if g.steps == 0 || !(g.factor > 1.0) {
                return Err(Error::InvalidParameter(
                    "divergence guard needs steps >= 1 and factor > 1".into(),
                ));
            }
        }
        Ok(())
    }
}
