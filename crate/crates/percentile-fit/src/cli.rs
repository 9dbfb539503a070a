//! The command-line surface: `fit`, `oracle`, and `benchmark`.
//!
//! Exit codes are a stable scripting contract: 0 success, 1 file/parse
//! problems, 2 precondition violations (bad flags, solver requirements),
//! 3 enumeration budget exceeded. Diagnostics go to stderr as one line.

use std::ffi::OsString;
use std::fs::File;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    run_experiment, summarize, write_failures_csv, write_plot_stub, write_results_csv,
    write_summary_csv,
};
use crate::data::Dataset;
use crate::error::Error;
use crate::io::{read_dataset, read_experiment_config, write_report, FileError};
use crate::problem::PercentileProblem;
use crate::residuals::{GridSpec, ResidualFamily};
use crate::solvers::{grid_oracle, solve_randomized, solve_theorem1, solve_theorem2, FitReport,
    SolveOptions};

pub const THREADS_ENV_VAR: &str = "PERCENTILE_FIT_THREADS";

#[derive(Parser)]
#[command(
    name = "percentile-fit",
    version,
    about = "Outlier-robust model fitting by minimizing a percentile of the residuals"
)]
struct Cli {
    /// Worker threads for subset enumeration; 0 picks the core count.
    /// Falls back to the PERCENTILE_FIT_THREADS environment variable.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a model while ignoring the worst residuals.
    Fit(FitArgs),
    /// Brute-force the objective over a parameter grid as a reference.
    Oracle(OracleArgs),
    /// Run the Monte-Carlo comparison against the baseline estimators.
    Benchmark(BenchmarkArgs),
}

#[derive(Args)]
struct FitArgs {
    /// Dataset CSV: columns x1..xp,y (linear) or x1..xd (centroid).
    #[arg(long)]
    input: PathBuf,

    #[arg(long, value_enum)]
    family: FamilyArg,

    /// How many residuals the objective ignores.
    #[arg(long)]
    outliers: usize,

    #[arg(long, value_enum)]
    solver: SolverArg,

    /// Random subsets to evaluate (randomized solver only).
    #[arg(long)]
    samples: Option<u64>,

    /// Seed for the randomized solver.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Cap on the number of subsets a solve may enumerate.
    #[arg(long, default_value_t = SolveOptions::default().budget)]
    budget: u64,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,

    #[arg(long, value_enum)]
    family: FamilyArg,

    #[arg(long)]
    outliers: usize,

    /// Search box as per-axis min,max pairs: "x0,x1" in 1-D,
    /// "x0,x1,y0,y1" in 2-D.
    #[arg(long = "box", value_name = "BOX", allow_hyphen_values = true)]
    bounds: String,

    /// Grid nodes per axis (at least 2).
    #[arg(long)]
    resolution: usize,

    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchmarkArgs {
    /// Experiment config JSON; missing fields take their defaults.
    #[arg(long)]
    config: PathBuf,

    /// Directory for results.csv, summary.csv, failures.csv, and plot.gp.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Absolute residuals of a linear model y ≈ xᵀθ.
    Linear,
    /// Squared Euclidean distance to a center θ.
    Centroid,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    #[value(name = "theorem1")]
    Theorem1,
    #[value(name = "theorem2")]
    Theorem2,
    Randomized,
}

/// What went wrong, bucketed by exit code.
#[derive(Debug)]
enum CliError {
    /// Exit 1: file could not be read, written, or parsed.
    File(FileError),
    /// Exit 2: a precondition on arguments or solver applicability failed.
    Precondition(String),
    /// Exit 3: the subset budget was exceeded.
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::File(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::File(e) => e.to_string(),
            CliError::Precondition(m) | CliError::Budget(m) => m.clone(),
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::File(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

/// Parses and runs a full command line; returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here as non-errors.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV_VAR) {
            Ok(raw) => Some(raw.parse().map_err(|_| {
                CliError::Precondition(format!(
                    "{THREADS_ENV_VAR} must be a non-negative integer, got '{raw}'"
                ))
            })?),
            Err(_) => None,
        },
    };
    match threads {
        None => dispatch(cli.command),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Precondition(format!("cannot build thread pool: {e}")))?;
            pool.install(|| dispatch(cli.command))
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Fit(args) => cmd_fit(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Benchmark(args) => cmd_benchmark(args),
    }
}

fn open(path: &Path) -> Result<File, CliError> {
    File::open(path)
        .map_err(|e| CliError::File(FileError::Format(format!("{}: {e}", path.display()))))
}

fn family_for(arg: FamilyArg, dataset: &Dataset) -> Result<ResidualFamily, CliError> {
    let family = match arg {
        FamilyArg::Linear => ResidualFamily::linear_abs(dataset.feature_dim()),
        FamilyArg::Centroid => ResidualFamily::sq_distance(dataset.feature_dim()),
    };
    family.map_err(CliError::from)
}

fn emit_report(report: &FitReport, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => {
            let file = File::create(path).map_err(FileError::Io)?;
            write_report(file, report)?;
        }
        None => write_report(std::io::stdout().lock(), report)?,
    }
    Ok(())
}

fn cmd_fit(args: FitArgs) -> Result<(), CliError> {
    if args.samples.is_some() && !matches!(args.solver, SolverArg::Randomized) {
        return Err(CliError::Precondition(
            "--samples requires --solver randomized".into(),
        ));
    }
    let dataset = read_dataset(open(&args.input)?)?;
    let family = family_for(args.family, &dataset)?;
    let problem = PercentileProblem::new(dataset, family, args.outliers)?;
    let opts = SolveOptions {
        budget: args.budget,
    };
    let report = match args.solver {
        SolverArg::Theorem1 => solve_theorem1(&problem, &opts)?,
        SolverArg::Theorem2 => solve_theorem2(&problem, &opts)?,
        SolverArg::Randomized => {
            let samples = args.samples.ok_or_else(|| {
                CliError::Precondition("--solver randomized requires --samples".into())
            })?;
            solve_randomized(&problem, samples, args.seed, &opts)?
        }
    };
    emit_report(&report, args.output.as_deref())
}

/// "x0,x1,y0,y1" → per-axis (lo, hi) split for `dim` axes.
fn parse_box(raw: &str, dim: usize) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let values: Vec<f64> = raw
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Precondition(format!("--box must be a list of numbers, got '{raw}'")))?;
    if values.len() != 2 * dim {
        return Err(CliError::Precondition(format!(
            "--box needs {} numbers ({dim} min,max pairs), got {}",
            2 * dim,
            values.len()
        )));
    }
    let lo = values.iter().step_by(2).copied().collect();
    let hi = values.iter().skip(1).step_by(2).copied().collect();
    Ok((lo, hi))
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let dataset = read_dataset(open(&args.input)?)?;
    let family = family_for(args.family, &dataset)?;
    let (lo, hi) = parse_box(&args.bounds, family.dim())?;
    let grid = GridSpec::new(lo, hi, args.resolution)?;
    let problem = PercentileProblem::new(dataset, family, args.outliers)?;
    let report = grid_oracle(&problem, &grid)?;
    emit_report(&report, args.output.as_deref())
}

fn cmd_benchmark(args: BenchmarkArgs) -> Result<(), CliError> {
    let config = read_experiment_config(open(&args.config)?)?;
    config.validate()?;
    let started = std::time::Instant::now();
    let outcome = run_experiment(&config)?;
    let elapsed = started.elapsed().as_secs_f64();

    std::fs::create_dir_all(&args.out_dir).map_err(FileError::Io)?;
    let create = |name: &str| -> Result<File, CliError> {
        Ok(File::create(args.out_dir.join(name)).map_err(FileError::Io)?)
    };
    write_results_csv(create("results.csv")?, &outcome.results, config.record_timing)?;
    let summary = if outcome.results.is_empty() {
        Vec::new()
    } else {
        summarize(&outcome.results)?
    };
    write_summary_csv(create("summary.csv")?, &summary)?;
    write_failures_csv(create("failures.csv")?, &outcome.failures)?;
    write_plot_stub(create("plot.gp")?)?;

    // Wall-clock chatter stays on stderr; the files are the deterministic
    // artifact.
    eprintln!(
        "wrote {} results and {} failures to {} in {elapsed:.2}s",
        outcome.results.len(),
        outcome.failures.len(),
        args.out_dir.display()
    );
    Ok(())
}
