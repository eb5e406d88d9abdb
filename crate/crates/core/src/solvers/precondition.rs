use crate::error::Result;
use crate::linalg::vecops::dist2;
use crate::metrics::ErrorMeter;
use crate::operator::Operator;
use crate::solvers::engine::{estimates, Recorder};
use crate::solvers::{
    lsqr_with_callback, Init, Sketch, SolveResult, SolveTrace, SolverConfig, StopReason,
};

/// Sketch-and-precondition: LSQR on `A R^{-1}` started from `cfg.init`,
/// for at most `cfg.max_iters` steps. One trace record per LSQR step.
pub fn sketch_and_precondition<O: Operator + ?Sized>(
    a: &O,
    b: &[f64],
    cfg: &SolverConfig,
    meter: Option<&ErrorMeter>,
) -> Result<SolveResult> {
    let sketch = Sketch::new(a, b, cfg)?;
    sketch_and_precondition_with(a, b, &sketch, cfg, meter)
}

/// [`sketch_and_precondition`] with a prebuilt sketch.
pub fn sketch_and_precondition_with<O: Operator + ?Sized>(
    a: &O,
    b: &[f64],
    sketch: &Sketch,
    cfg: &SolverConfig,
    meter: Option<&ErrorMeter>,
) -> Result<SolveResult> {
    let x0 = match cfg.init {
        Init::SketchAndSolve => sketch.x0.clone(),
        Init::Zero => vec![0.0; a.ncols()],
    };
    let (normest, condest) = estimates(sketch.r(), cfg)?;
    let mut rec = Recorder::new(cfg.record_vectors, meter);
    let mut r_prev = a.residual(b, &x0);
    rec.push(0, &x0, &r_prev, None)?;

    let (x, iterations) = lsqr_with_callback(
        a,
        b,
        &x0,
        sketch.r(),
        cfg.max_iters,
        cfg.lsqr_rtol,
        |k, xk| {
            let r = a.residual(b, xk);
            let change = dist2(&r, &r_prev);
            rec.push(k, xk, &r, Some(change))?;
            r_prev = r;
            Ok(())
        },
    )?;
    let stop_reason = if iterations < cfg.max_iters {
        StopReason::Tolerance
    } else {
        StopReason::MaxIters
    };
    Ok(SolveResult {
        solution: x,
        iterations,
        trace: SolveTrace {
            records: rec.records,
            stop_reason,
            rule_fired_at: None,
            normest,
            condest,
        },
        config: cfg.clone(),
    })
}
