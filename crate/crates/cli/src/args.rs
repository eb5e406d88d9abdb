use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itsketch::solvers::{Init, Variant};

#[derive(Debug, Parser)]
#[command(name = "itsketch", version, about = "Randomized least-squares experiments with CSV output")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem (generated or loaded from CSV) and print a summary row.
    Solve(SolveArgs),
    /// Per-iteration errors of the solvers next to the theoretical bounds.
    Convergence(ConvergenceArgs),
    /// Stable iterative sketching against its three unstable variants.
    Bad(BadArgs),
    /// Sketch-and-precondition and iterative sketching side by side.
    Compare(CompareArgs),
    /// Embedding dimensions chosen by the dimension formula.
    Dims(DimsArgs),
    /// Timing and accuracy on a kernel regression problem built from a CSV.
    Kernel(KernelArgs),
    /// Timing on the sparse test problem for several row counts.
    Sparsebench(SparsebenchArgs),
    /// Write a synthetic Gaussian-mixture data set for `kernel`.
    GenKernelData(GenKernelDataArgs),
}

/// Embedding dimension: an integer, `auto` for the dimension formula, or
/// `<k>n` for a multiple of the column count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DimArg {
    Auto,
    Fixed(usize),
    PerColumn(usize),
}

impl FromStr for DimArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected an integer, `auto` or `<k>n`, got {s:?}");
        if s == "auto" {
            Ok(Self::Auto)
        } else if let Some(k) = s.strip_suffix('n') {
            k.parse().map(Self::PerColumn).map_err(|_| bad())
        } else {
            s.parse().map(Self::Fixed).map_err(|_| bad())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Basic,
    Damped,
    Momentum,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Basic => Variant::Basic,
            VariantArg::Damped => Variant::Damped,
            VariantArg::Momentum => Variant::Momentum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    Sketch,
    Zero,
}

impl From<InitArg> for Init {
    fn from(i: InitArg) -> Self {
        match i {
            InitArg::Sketch => Init::SketchAndSolve,
            InitArg::Zero => Init::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricsArg {
    /// Forward and residual errors only.
    Cheap,
    /// Also the backward error (dense problems up to 4000 rows).
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvMethod {
    Basic,
    Damped,
    Momentum,
    SpZero,
    SpSketch,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Embedding dimension: integer, `auto`, or `<k>n`.
    #[arg(long, default_value = "auto")]
    pub d: DimArg,
    /// Target accuracy used by `--d auto` and the stopping rule [default: 2^-53].
    #[arg(long)]
    pub accuracy: Option<f64>,
    /// Nonzeros per column of the sparse sign embedding.
    #[arg(long, default_value_t = 8)]
    pub zeta: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Basic)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = InitArg::Sketch)]
    pub init: InitArg,
    #[arg(long, default_value_t = 100)]
    pub max_iters: usize,
    #[arg(long, value_enum, default_value_t = MetricsArg::Full)]
    pub metrics: MetricsArg,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Rows of the generated problem.
    #[arg(long, required_unless_present = "matrix")]
    pub m: Option<usize>,
    /// Columns of the generated problem.
    #[arg(long, required_unless_present = "matrix")]
    pub n: Option<usize>,
    /// Condition number of the generated matrix.
    #[arg(long, default_value_t = 1e4)]
    pub cond: f64,
    /// Residual norm of the generated problem.
    #[arg(long, default_value_t = 1e-6)]
    pub resnorm: f64,
    /// Seed for the problem and the embedding.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Matrix CSV (one header row, one matrix row per line).
    #[arg(long, requires = "rhs", conflicts_with_all = ["m", "n"])]
    pub matrix: Option<PathBuf>,
    /// Right-hand side CSV (one header row, one column).
    #[arg(long, requires = "matrix")]
    pub rhs: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Solution CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary CSV [default: stdout].
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergenceArgs {
    #[arg(long, default_value_t = 1000)]
    pub m: usize,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_value = "1e1,1e10")]
    pub conds: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1e-12,1e-3")]
    pub resnorms: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Iterations per method.
    #[arg(long, default_value_t = 30)]
    pub iters: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "basic")]
    pub methods: Vec<ConvMethod>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output CSV [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BadArgs {
    #[arg(long, default_value_t = 1000)]
    pub m: usize,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long, default_value_t = 1e10)]
    pub cond: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub resnorm: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 30)]
    pub iters: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 1000)]
    pub m: usize,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long, default_value_t = 1e10)]
    pub cond: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub resnorm: f64,
    /// Problem seeds; trials run in parallel.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = 50)]
    pub iters: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DimsArgs {
    #[arg(long, value_delimiter = ',', default_value = "1000,4000,100000")]
    pub m: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "50")]
    pub n: Vec<usize>,
    /// Target accuracy [default: 2^-53].
    #[arg(long)]
    pub accuracy: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    /// Data CSV with feature columns and a target column.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value = "y")]
    pub target: String,
    /// Numbers of kernel centers.
    #[arg(long, value_delimiter = ',', default_value = "10,20,50,100")]
    pub ns: Vec<usize>,
    #[arg(long, default_value_t = 4.0)]
    pub bandwidth: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Timed runs per measurement; the median is reported.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SparsebenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "20000,40000")]
    pub m: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    /// Embedding dimension: integer, `auto`, or `<k>n`.
    #[arg(long, default_value = "30n")]
    pub d: DimArg,
    #[arg(long)]
    pub accuracy: Option<f64>,
    #[arg(long, default_value_t = 8)]
    pub zeta: usize,
    #[arg(long, default_value_t = 200)]
    pub max_iters: usize,
    /// Skip the dense QR baseline above this many matrix entries.
    #[arg(long, default_value_t = 20_000_000)]
    pub qr_max_entries: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenKernelDataArgs {
    #[arg(long, default_value_t = 2000)]
    pub rows: usize,
    #[arg(long, default_value_t = 8)]
    pub features: usize,
    #[arg(long, default_value_t = 4)]
    pub components: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "y")]
    pub target: String,
    #[arg(long)]
    pub out: PathBuf,
}
