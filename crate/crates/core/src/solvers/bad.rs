use crate::error::Result;
use crate::linalg::dense_solve::GramFactor;
use crate::metrics::ErrorMeter;
use crate::operator::Operator;
use crate::solvers::engine::{refine, Correction};
use crate::solvers::{Sketch, SolveResult, SolverConfig};

/// Unstable ways to implement iterative sketching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BadKind {
    /// Solve with an explicitly formed `(SA)^T (SA)` (Cholesky, falling back
    /// to partially pivoted LU).
    Matrix,
    /// Form the right-hand side as `A^T b - A^T (A x_i)`.
    Residual,
    /// Start from `x0 = 0` instead of the sketch-and-solve solution.
    Init,
}

impl BadKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Matrix => "bad_matrix",
            Self::Residual => "bad_residual",
            Self::Init => "bad_init",
        }
    }
}

/// Runs one of the unstable variants. Divergence is reported through
/// `stop_reason`, not as an error. `bad_matrix` and `bad_residual` keep the
/// QR-based sketch-and-solve start so only the named step differs.
pub fn bad_variant<O: Operator + ?Sized>(
    a: &O,
    b: &[f64],
    cfg: &SolverConfig,
    kind: BadKind,
    meter: Option<&ErrorMeter>,
) -> Result<SolveResult> {
    let sketch = Sketch::new(a, b, cfg)?;
    let r = sketch.r();
    match kind {
        BadKind::Matrix => {
            let gram = GramFactor::new(&sketch.sa.tmatmul(&sketch.sa)?)?;
            refine(a, b, sketch.x0.clone(), &Correction::Gram(&gram), r, cfg, meter)
        }
        BadKind::Residual => {
            let corr = Correction::UnstableResidual {
                r,
                atb: a.apply_t(b),
            };
            refine(a, b, sketch.x0.clone(), &corr, r, cfg, meter)
        }
        BadKind::Init => refine(
            a,
            b,
            vec![0.0; a.ncols()],
            &Correction::Triangular(r),
            r,
            cfg,
            meter,
        ),
    }
}
