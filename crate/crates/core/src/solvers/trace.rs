use crate::metrics::ErrorReport;
use crate::solvers::SolverConfig;

/// Why an iteration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The residual-change rule fired (plus any extra iterations).
    StoppingRule,
    /// LSQR met its relative tolerance or its bidiagonalization terminated.
    Tolerance,
    MaxIters,
    /// The divergence guard tripped or an iterate became non-finite.
    Diverged,
}

impl StopReason {
    pub fn name(self) -> &'static str {
        match self {
            Self::StoppingRule => "stopping_rule",
            Self::Tolerance => "tolerance",
            Self::MaxIters => "max_iters",
            Self::Diverged => "diverged",
        }
    }
}

/// State after iteration `iter` (iteration 0 is the initial iterate).
#[derive(Debug, Clone, PartialEq)]
pub struct IterRecord {
    pub iter: usize,
    /// `x_i`, kept when `record_vectors` is on.
    pub x: Option<Vec<f64>>,
    /// `r_i = b - A x_i`, kept when `record_vectors` is on.
    pub residual: Option<Vec<f64>>,
    pub residual_norm: f64,
    /// `||r_i - r_{i-1}||`; absent for the initial iterate.
    pub residual_change: Option<f64>,
    /// Present when the solver was given ground truth.
    pub errors: Option<ErrorReport>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveTrace {
    pub records: Vec<IterRecord>,
    pub stop_reason: StopReason,
    /// Iteration at which the stopping rule first held.
    pub rule_fired_at: Option<usize>,
    pub normest: f64,
    pub condest: f64,
}

impl SolveTrace {
    /// Forward errors per record; empty without ground truth.
    pub fn forward_errors(&self) -> Vec<f64> {
        self.records
            .iter()
            .filter_map(|r| r.errors.map(|e| e.fe))
            .collect()
    }

    /// Residual errors per record; empty without ground truth.
    pub fn residual_errors(&self) -> Vec<f64> {
        self.records
            .iter()
            .filter_map(|r| r.errors.map(|e| e.re))
            .collect()
    }

    pub fn last(&self) -> &IterRecord {
        self.records.last().expect("trace holds the initial iterate")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub solution: Vec<f64>,
    /// Number of updates performed after the initial iterate.
    pub iterations: usize,
    pub trace: SolveTrace,
    pub config: SolverConfig,
}
