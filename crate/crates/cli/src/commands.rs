use std::fmt;
use std::path::Path;
use std::time::Instant;

use itsketch::embed::choose_dim;
use itsketch::linalg::vecops::{dist2, norm2};
use itsketch::linalg::{condition_number, qr_solve, spectral_norm, DenseMatrix};
use itsketch::metrics::{wedin_bounds, ErrorMeter, ErrorReport, DEFAULT_BE_CAP};
use itsketch::problems::{
    gaussian_mixture, gen_randsvd, gen_sparse, kernel_problem, load_csv, load_table, write_table,
    KernelConfig, LsProblem, ProblemMatrix,
};
use itsketch::solvers::{
    bad_variant, iterative_sketching, sketch_and_precondition, theoretical_bound_curve, BadKind,
    Init, SolveResult, SolverConfig, StopReason, Variant,
};
use itsketch::Operator;
use rayon::prelude::*;

use crate::args::*;
use crate::output::{num, opt, CsvOut, SCHEMA_LINE};

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values; exit 64.
    Usage(String),
    /// Unreadable or malformed input, or unwritable output; exit 2.
    Io(String),
    /// The solver reported divergence; exit 1.
    Diverged,
    /// Any other failure inside the solver; exit 1.
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 64,
            Self::Io(_) => 2,
            Self::Diverged | Self::Solver(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "invalid arguments: {m}"),
            Self::Io(m) => write!(f, "input/output error: {m}"),
            Self::Diverged => write!(f, "solver diverged"),
            Self::Solver(m) => write!(f, "solver error: {m}"),
        }
    }
}

impl From<itsketch::Error> for CliError {
    fn from(e: itsketch::Error) -> Self {
        use itsketch::Error as E;
        match e {
            E::Io(_) | E::Parse { .. } | E::NonFinite { .. } => Self::Io(e.to_string()),
            E::InvalidParameter(_) | E::TooLarge { .. } | E::Domain(_) => Self::Usage(e.to_string()),
            _ => Self::Solver(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Solve(a) => solve(&a),
        Command::Convergence(a) => convergence(&a),
        Command::Bad(a) => bad(&a),
        Command::Compare(a) => compare(&a),
        Command::Dims(a) => dims(&a),
        Command::Kernel(a) => kernel(&a),
        Command::Sparsebench(a) => sparsebench(&a),
        Command::GenKernelData(a) => gen_kernel_data(&a),
    }
}

fn accuracy(acc: Option<f64>) -> CliResult<f64> {
    match acc {
        None => Ok(UNIT_ROUNDOFF),
        Some(u) if u > 0.0 && u < 1.0 => Ok(u),
        Some(u) => Err(CliError::Usage(format!("--accuracy must lie in (0, 1), got {u}"))),
    }
}

fn resolve_d(d: DimArg, m: usize, n: usize, u: f64, variant: Variant) -> CliResult<usize> {
    Ok(match d {
        DimArg::Auto => choose_dim(m, n, u, variant)?,
        DimArg::Fixed(d) => d,
        DimArg::PerColumn(k) => k * n,
    })
}

fn config(s: &SolverArgs, m: usize, n: usize, variant: Variant, seed: u64) -> CliResult<SolverConfig> {
    let u = accuracy(s.accuracy)?;
    let d = resolve_d(s.d, m, n, u, variant)?;
    let mut cfg = SolverConfig::new(d)
        .zeta(s.zeta)
        .variant(variant)
        .init(s.init.into())
        .max_iters(s.max_iters)
        .seed(seed)
        .unit_roundoff(u);
    cfg.validate(m, n)?;
    if s.metrics == MetricsArg::Cheap {
        cfg = cfg.record_vectors(false);
    }
    Ok(cfg)
}

fn meter(p: &LsProblem, metrics: MetricsArg) -> CliResult<Option<ErrorMeter>> {
    let full = metrics == MetricsArg::Full;
    if full && p.truth.is_some() && matches!(p.a, ProblemMatrix::Dense(_)) && p.a.rows() > DEFAULT_BE_CAP {
        return Err(CliError::Usage(format!(
            "backward error is limited to {DEFAULT_BE_CAP} rows; pass --metrics cheap"
        )));
    }
    Ok(p.meter(full)?)
}

/// Trial pool sized by `RLS_THREADS` (default: all hardware threads).
fn pool() -> CliResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("RLS_THREADS") {
        let t: usize = v
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| CliError::Usage(format!("RLS_THREADS must be a positive integer, got {v:?}")))?;
        b = b.num_threads(t);
    }
    b.build().map_err(|e| CliError::Solver(e.to_string()))
}

fn par_trials<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> CliResult<R> + Sync + Send) -> CliResult<Vec<R>> {
    pool()?.install(|| items.par_iter().map(f).collect())
}

/// Median wall-clock milliseconds of `repeats` runs and the last result.
fn timed<R>(repeats: usize, mut f: impl FnMut() -> CliResult<R>) -> CliResult<(f64, R)> {
    let mut times = Vec::with_capacity(repeats.max(1));
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let t = Instant::now();
        last = Some(f()?);
        times.push(t.elapsed().as_secs_f64() * 1e3);
    }
    times.sort_by(f64::total_cmp);
    let k = times.len();
    let med = if k % 2 == 1 { times[k / 2] } else { 0.5 * (times[k / 2 - 1] + times[k / 2]) };
    Ok((med, last.expect("at least one run")))
}

fn report_fields(e: Option<&ErrorReport>) -> [String; 3] {
    match e {
        Some(e) => [num(e.fe), num(e.re), opt(e.be)],
        None => Default::default(),
    }
}

fn qr_report(p: &LsProblem, meter: Option<&ErrorMeter>) -> CliResult<(Vec<f64>, Option<ErrorReport>)> {
    let a = p.a.to_dense();
    let x = qr_solve(&a, &p.b)?;
    let rep = match meter {
        Some(m) => Some(m.report(&x, &a.residual(&p.b, &x))?),
        None => None,
    };
    Ok((x, rep))
}

fn solve(a: &SolveArgs) -> CliResult<()> {
    let problem = match (&a.matrix, &a.rhs) {
        (Some(mp), Some(bp)) => load_problem(mp, bp)?,
        _ => {
            let (m, n) = (a.m.expect("clap enforces --m"), a.n.expect("clap enforces --n"));
            gen_randsvd(m, n, a.cond, a.resnorm, a.seed)?
        }
    };
    let (m, n) = problem.shape();
    let variant: Variant = a.solver.variant.into();
    let cfg = config(&a.solver, m, n, variant, a.seed)?;
    let meter = meter(&problem, a.solver.metrics)?;
    let res = iterative_sketching(&problem.a, &problem.b, &cfg, meter.as_ref())?;

    if let Some(path) = &a.out {
        let mut out = CsvOut::create(Some(path), &["x"])?;
        for v in &res.solution {
            out.row(&[num(*v)])?;
        }
        out.finish()?;
    }
    let mut sum = CsvOut::create(
        a.summary.as_deref(),
        &["m", "n", "d", "variant", "iters", "stop_reason", "fe", "re", "be"],
    )?;
    let [fe, re, be] = report_fields(res.trace.last().errors.as_ref());
    sum.row(&[
        m.to_string(),
        n.to_string(),
        cfg.d.to_string(),
        variant.name().into(),
        res.iterations.to_string(),
        res.trace.stop_reason.name().into(),
        fe,
        re,
        be,
    ])?;
    sum.finish()?;
    if res.trace.stop_reason == StopReason::Diverged {
        return Err(CliError::Diverged);
    }
    Ok(())
}

fn load_problem(matrix: &Path, rhs: &Path) -> CliResult<LsProblem> {
    let a = load_table(matrix)?.data;
    let b = load_table(rhs)?;
    if b.data.cols() != 1 {
        return Err(CliError::Io(format!("{}: expected one column", rhs.display())));
    }
    if b.data.rows() != a.rows() {
        return Err(CliError::Io(format!(
            "matrix has {} rows but right-hand side has {}",
            a.rows(),
            b.data.rows()
        )));
    }
    if a.rows() < a.cols() {
        return Err(CliError::Io(format!("matrix is wide ({} x {})", a.rows(), a.cols())));
    }
    Ok(LsProblem {
        a: ProblemMatrix::Dense(a),
        b: b.data.col(0).to_vec(),
        truth: None,
    })
}

fn conv_method_parts(m: ConvMethod) -> (&'static str, Variant, Option<Init>) {
    match m {
        ConvMethod::Basic => ("is_basic", Variant::Basic, None),
        ConvMethod::Damped => ("is_damped", Variant::Damped, None),
        ConvMethod::Momentum => ("is_momentum", Variant::Momentum, None),
        ConvMethod::SpZero => ("sp_zero", Variant::Basic, Some(Init::Zero)),
        ConvMethod::SpSketch => ("sp_sketch", Variant::Basic, Some(Init::SketchAndSolve)),
    }
}

fn convergence(a: &ConvergenceArgs) -> CliResult<()> {
    let trials: Vec<(f64, f64)> = a
        .conds
        .iter()
        .flat_map(|&k| a.resnorms.iter().map(move |&b| (k, b)))
        .collect();
    let blocks = par_trials(&trials, |&(kappa, beta)| {
        let p = gen_randsvd(a.m, a.n, kappa, beta, a.seed)?;
        let meter = meter(&p, a.solver.metrics)?;
        let mut rows = Vec::new();
        let lead = |name: &str| vec![name.to_string(), num(kappa), num(beta)];
        let (_, qr) = qr_report(&p, meter.as_ref())?;
        let mut row = lead("qr");
        row.push("-1".into());
        row.extend(report_fields(qr.as_ref()));
        row.extend([String::new(), String::new(), String::new()]);
        rows.push(row);

        for &method in &a.methods {
            let (name, variant, sp_init) = conv_method_parts(method);
            let cfg = config(&a.solver, a.m, a.n, variant, a.seed)?;
            let res = match sp_init {
                Some(init) => sketch_and_precondition(&p.a, &p.b, &cfg.clone().init(init).max_iters(a.iters), meter.as_ref())?,
                None => iterative_sketching(&p.a, &p.b, &cfg.clone().fixed_iterations(a.iters), meter.as_ref())?,
            };
            let curve = match sp_init {
                Some(_) => Vec::new(),
                None => theoretical_bound_curve(variant, cfg.param_epsilon(a.n), kappa, 1.0, beta, a.iters)
                    .unwrap_or_default(),
            };
            for rec in &res.trace.records {
                let mut row = lead(name);
                row.push(rec.iter.to_string());
                row.extend(report_fields(rec.errors.as_ref()));
                row.push(opt(rec.residual_change));
                match curve.iter().find(|b| b.iter == rec.iter) {
                    Some(b) if beta > 0.0 => row.extend([num(b.fe), num(b.re / beta)]),
                    _ => row.extend([String::new(), String::new()]),
                }
                rows.push(row);
            }
        }
        Ok(rows)
    })?;
    let mut out = CsvOut::create(
        a.out.as_deref(),
        &["method", "kappa", "resnorm", "iter", "fe", "re", "be", "res_change", "bound_fe", "bound_re"],
    )?;
    for row in blocks.into_iter().flatten() {
        out.row(&row)?;
    }
    Ok(out.finish()?)
}

fn bad(a: &BadArgs) -> CliResult<()> {
    let p = gen_randsvd(a.m, a.n, a.cond, a.resnorm, a.seed)?;
    let meter = meter(&p, a.solver.metrics)?;
    let (_, qr) = qr_report(&p, meter.as_ref())?;
    let qr = qr.expect("generated problems carry truth");
    let cfg = config(&a.solver, a.m, a.n, Variant::Basic, a.seed)?
        .fixed_iterations(a.iters)
        .divergence(None);
    let kinds = [None, Some(BadKind::Matrix), Some(BadKind::Residual), Some(BadKind::Init)];
    let results = par_trials(&kinds, |k| -> CliResult<(&'static str, SolveResult)> {
        Ok(match k {
            None => ("stable", iterative_sketching(&p.a, &p.b, &cfg, meter.as_ref())?),
            Some(kind) => (kind.name(), bad_variant(&p.a, &p.b, &cfg, *kind, meter.as_ref())?),
        })
    })?;
    let mut out = CsvOut::create(
        a.out.as_deref(),
        &["method", "iter", "fe", "re", "be", "res_change", "qr_fe", "qr_be"],
    )?;
    for (name, res) in &results {
        for rec in &res.trace.records {
            let [fe, re, be] = report_fields(rec.errors.as_ref());
            out.row(&[
                name.to_string(),
                rec.iter.to_string(),
                fe,
                re,
                be,
                opt(rec.residual_change),
                num(qr.fe),
                opt(qr.be),
            ])?;
        }
    }
    Ok(out.finish()?)
}

fn compare(a: &CompareArgs) -> CliResult<()> {
    const METHODS: [ConvMethod; 5] = [
        ConvMethod::SpZero,
        ConvMethod::SpSketch,
        ConvMethod::Basic,
        ConvMethod::Damped,
        ConvMethod::Momentum,
    ];
    let mut seeds = a.seeds.clone();
    seeds.sort_unstable();
    seeds.dedup();
    let blocks = par_trials(&seeds, |&seed| {
        let p = gen_randsvd(a.m, a.n, a.cond, a.resnorm, seed)?;
        let meter = meter(&p, a.solver.metrics)?;
        let mut rows = Vec::new();
        let (_, qr) = qr_report(&p, meter.as_ref())?;
        let mut row = vec!["qr".to_string(), seed.to_string(), "-1".into()];
        row.extend(report_fields(qr.as_ref()));
        rows.push(row);
        for method in METHODS {
            let (name, variant, sp_init) = conv_method_parts(method);
            let cfg = config(&a.solver, a.m, a.n, variant, seed)?;
            let res = match sp_init {
                Some(init) => sketch_and_precondition(&p.a, &p.b, &cfg.init(init).max_iters(a.iters), meter.as_ref())?,
                None => iterative_sketching(&p.a, &p.b, &cfg.fixed_iterations(a.iters), meter.as_ref())?,
            };
            for rec in &res.trace.records {
                let mut row = vec![name.to_string(), seed.to_string(), rec.iter.to_string()];
                row.extend(report_fields(rec.errors.as_ref()));
                rows.push(row);
            }
        }
        Ok(rows)
    })?;
    let mut out = CsvOut::create(a.out.as_deref(), &["method", "seed", "iter", "fe", "re", "be"])?;
    for row in blocks.into_iter().flatten() {
        out.row(&row)?;
    }
    Ok(out.finish()?)
}

fn dims(a: &DimsArgs) -> CliResult<()> {
    let u = accuracy(a.accuracy)?;
    let mut out = CsvOut::create(a.out.as_deref(), &["m", "n", "accuracy", "variant", "d"])?;
    for &m in &a.m {
        for &n in &a.n {
            if m < n {
                return Err(CliError::Usage(format!("need m >= n, got m={m}, n={n}")));
            }
            for v in [Variant::Basic, Variant::Damped, Variant::Momentum] {
                let d = choose_dim(m, n, u, v)?;
                out.row(&[m.to_string(), n.to_string(), num(u), v.name().into(), d.to_string()])?;
            }
        }
    }
    Ok(out.finish()?)
}

fn kernel(a: &KernelArgs) -> CliResult<()> {
    let (points, targets) = load_csv(&a.data, &a.target)?;
    let mut out = CsvOut::create(
        a.out.as_deref(),
        &["n", "method", "time_ms", "iters", "rel_diff_vs_qr", "wedin_bound"],
    )?;
    for &n in &a.ns {
        let kcfg = KernelConfig {
            bandwidth: a.bandwidth,
            subset_size: n,
            seed: a.seed,
        };
        let kp = kernel_problem(&points, &targets, &kcfg)?;
        if !kp.dropped_features.is_empty() {
            eprintln!("warning: dropped constant feature columns {:?}", kp.dropped_features);
        }
        let p = &kp.problem;
        let mat = p.a.as_dense().expect("kernel matrices are dense");
        let (m, _) = p.shape();
        let (qr_ms, x_qr) = timed(a.repeats, || Ok(qr_solve(mat, &p.b)?))?;
        let cfg = config(&a.solver, m, n, a.solver.variant.into(), a.seed)?.record_vectors(false);
        let (is_ms, res) = timed(a.repeats, || Ok(iterative_sketching(mat, &p.b, &cfg, None)?))?;

        let norm_x = norm2(&x_qr);
        let kappa = condition_number(mat)?;
        let bound = wedin_bounds(kappa, spectral_norm(mat)?, norm_x, norm2(&mat.residual(&p.b, &x_qr)), UNIT_ROUNDOFF)
            .ok()
            .filter(|_| norm_x > 0.0)
            .map(|(fe, _)| fe / norm_x);
        let rel = if norm_x > 0.0 { dist2(&x_qr, &res.solution) / norm_x } else { f64::NAN };
        out.row(&[n.to_string(), "qr".into(), num(qr_ms), "0".into(), num(0.0), opt(bound)])?;
        out.row(&[n.to_string(), "is".into(), num(is_ms), res.iterations.to_string(), num(rel), opt(bound)])?;
    }
    Ok(out.finish()?)
}

fn sparsebench(a: &SparsebenchArgs) -> CliResult<()> {
    let u = accuracy(a.accuracy)?;
    let mut out = CsvOut::create(a.out.as_deref(), &["m", "n", "method", "time_ms", "iters"])?;
    for &m in &a.m {
        let p = gen_sparse(m, a.n, a.seed)?;
        let d = resolve_d(a.d, m, a.n, u, Variant::Basic)?;
        let cfg = SolverConfig::new(d)
            .zeta(a.zeta)
            .max_iters(a.max_iters)
            .seed(a.seed)
            .unit_roundoff(u)
            .record_vectors(false);
        cfg.validate(m, a.n)?;
        let (ms, res) = timed(a.repeats, || Ok(iterative_sketching(&p.a, &p.b, &cfg, None)?))?;
        out.row(&[m.to_string(), a.n.to_string(), "is".into(), num(ms), res.iterations.to_string()])?;
        if m * a.n <= a.qr_max_entries {
            let dense = p.a.to_dense();
            let (ms, _) = timed(a.repeats, || Ok(qr_solve(&dense, &p.b)?))?;
            out.row(&[m.to_string(), a.n.to_string(), "qr".into(), num(ms), "0".into()])?;
        }
    }
    Ok(out.finish()?)
}

fn gen_kernel_data(a: &GenKernelDataArgs) -> CliResult<()> {
    let (points, y) = gaussian_mixture(a.rows, a.features, a.components, a.seed)?;
    let names: Vec<String> = (0..a.features).map(|j| format!("x{j}")).collect();
    if names.contains(&a.target) {
        return Err(CliError::Usage(format!("target name {:?} clashes with a feature column", a.target)));
    }
    let mut header: Vec<&str> = names.iter().map(String::as_str).collect();
    header.push(&a.target);
    let data: DenseMatrix = points.hstack(&DenseMatrix::from_column(&y)?)?;
    let mut buf = format!("{SCHEMA_LINE}\n").into_bytes();
    write_table(&mut buf, &header, &data)?;
    std::fs::write(&a.out, buf)?;
    Ok(())
}
