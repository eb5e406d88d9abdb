use crate::embed::{Embedding, SparseSignEmbedding};
use crate::error::Result;
use crate::linalg::{householder_qr_econ, tri_solve_upper, DenseMatrix, QrFactors};
use crate::metrics::ErrorMeter;
use crate::operator::Operator;
use crate::solvers::engine::{refine, Correction};
use crate::solvers::{Init, SolveResult, SolverConfig};

/// Sketch-and-solve: `x0 = argmin ||S b - (S A) y|| = R^{-1} (Q^T (S b))`
/// with `S A = Q R`. The factors are returned for reuse.
///
/// A zero on the diagonal of `R` (a rank-deficient sketch) surfaces as
/// [`Error::Singular`](crate::Error::Singular); draw a new embedding.
pub fn sketch_and_solve<O, E>(a: &O, b: &[f64], s: &E) -> Result<(Vec<f64>, QrFactors)>
where
    O: Operator + ?Sized,
    E: Embedding + ?Sized,
{
    let qr = householder_qr_econ(&a.sketch(s)?)?;
    let sb = s.apply_vec(b)?;
    let x0 = tri_solve_upper(&qr.r, &qr.q.tmul_vec(&sb))?;
    Ok((x0, qr))
}

/// A drawn embedding with everything derived from it, shareable between
/// solvers that should see the same `S`.
#[derive(Debug, Clone)]
pub struct Sketch {
    pub embedding: SparseSignEmbedding,
    /// `S A`
    pub sa: DenseMatrix,
    pub qr: QrFactors,
    /// Sketch-and-solve solution.
    pub x0: Vec<f64>,
}

impl Sketch {
    /// Draws a `d x m` sparse sign embedding with `cfg.zeta` nonzeros per
    /// column from `cfg.seed` and factors `S A`.
    pub fn new<O: Operator + ?Sized>(a: &O, b: &[f64], cfg: &SolverConfig) -> Result<Self> {
        cfg.validate(a.nrows(), a.ncols())?;
        if b.len() != a.nrows() {
            return Err(crate::Error::Dimension("b length differs from row count".into()));
        }
        let embedding = SparseSignEmbedding::new(cfg.d, a.nrows(), cfg.zeta, cfg.seed)?;
        let sa = a.sketch(&embedding)?;
        let qr = householder_qr_econ(&sa)?;
        let sb = embedding.apply_vec(b)?;
        let x0 = tri_solve_upper(&qr.r, &qr.q.tmul_vec(&sb))?;
        Ok(Self {
            embedding,
            sa,
            qr,
            x0,
        })
    }

    pub fn r(&self) -> &DenseMatrix {
        &self.qr.r
    }
}

/// Iterative sketching with the stable update order:
/// `r_i = b - A x_i`, `c_i = A^T r_i`, `d_i = R^{-1} (R^{-T} c_i)`, then the
/// variant's step. Stops by the residual-change rule, after `max_iters`, or
/// when the divergence guard trips.
///
/// ```
/// use itsketch::problems::gen_randsvd;
/// use itsketch::solvers::{iterative_sketching, SolverConfig};
///
/// let p = gen_randsvd(2000, 20, 1e6, 1e-6, 1).unwrap();
/// let a = p.a.as_dense().unwrap();
/// let res = iterative_sketching(a, &p.b, &SolverConfig::new(400).seed(2), None).unwrap();
/// let truth = p.truth.unwrap();
/// let fe = itsketch::metrics::forward_error(&truth.x, &res.solution).unwrap();
/// assert!(fe < 1e-8);
/// ```
pub fn iterative_sketching<O: Operator + ?Sized>(
    a: &O,
    b: &[f64],
    cfg: &SolverConfig,
    meter: Option<&ErrorMeter>,
) -> Result<SolveResult> {
    let sketch = Sketch::new(a, b, cfg)?;
    iterative_sketching_with(a, b, &sketch, cfg, meter)
}

/// [`iterative_sketching`] with a prebuilt sketch; `cfg.d`, `cfg.zeta` and
/// the embedding seed are taken as already applied.
pub fn iterative_sketching_with<O: Operator + ?Sized>(
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
    refine(a, b, x0, &Correction::Triangular(sketch.r()), sketch.r(), cfg, meter)
}
