use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracjac::{solve, MeshSpec, SolverConfig};
use fracjac_cli::convergence::{self, PointStatus};
use fracjac_cli::format::sci3;
use fracjac_cli::report::{grid_errors, RunReport};
use fracjac_cli::table::{self, TableOptions, TableSpec};
use fracjac_cli::{find_problem, CliError};

#[derive(Parser)]
#[command(name = "fracjac", version, about = "Spectral step-by-step solver for Caputo fractional initial value problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem and write a run report.
    Solve(SolveArgs),
    /// Reproduce one of the benchmark error tables (1-6).
    Table(TableArgs),
    /// Estimate convergence orders over a list of resolutions.
    Convergence(ConvergenceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct MethodArgs {
    /// Gauss-Jacobi nodes per step.
    #[arg(long, default_value_t = 30)]
    k: usize,
    /// Gauss-Legendre nodes for the history integrals.
    #[arg(long, default_value_t = 30)]
    p: usize,
    /// Fixed-point tolerance (default: twice the machine epsilon).
    #[arg(long)]
    fp_tol: Option<f64>,
    /// Fixed-point iteration cap.
    #[arg(long)]
    fp_max_iters: Option<usize>,
}

impl MethodArgs {
    fn config(&self, s: usize, mesh: MeshSpec) -> SolverConfig {
        let mut cfg = SolverConfig::new(s, mesh).with_k(self.k).with_p(self.p);
        if let Some(tol) = self.fp_tol {
            cfg = cfg.with_fp_tol(tol);
        }
        if let Some(iters) = self.fp_max_iters {
            cfg = cfg.with_fp_max_iters(iters);
        }
        cfg
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, content: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, content).map_err(|source| CliError::Output {
                path: path.clone(),
                source,
            }),
            None => match std::io::stdout().lock().write_all(content.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Output {
                    path: PathBuf::from("<stdout>"),
                    source: e,
                }),
                _ => Ok(()),
            },
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: String,
    /// Number of basis polynomials.
    #[arg(long)]
    s: usize,
    #[command(flatten)]
    method: MethodArgs,
    /// First step of a graded mesh.
    #[arg(long, requires = "r", conflicts_with = "uniform_n")]
    h1: Option<f64>,
    /// Step ratio of a graded mesh.
    #[arg(long, requires = "h1", conflicts_with = "uniform_n")]
    r: Option<f64>,
    /// Number of steps of a uniform mesh.
    #[arg(long = "uniform-N", id = "uniform_n")]
    uniform_n: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also report the maximum error of the dense output.
    #[arg(long)]
    dense_error: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Table number, 1 to 6.
    id: u8,
    /// Only compute these values of s (comma separated).
    #[arg(long, value_delimiter = ',')]
    rows: Option<Vec<usize>>,
    #[arg(long, default_value_t = 30)]
    p: usize,
    #[arg(long)]
    fp_tol: Option<f64>,
    /// Fixed-point iteration cap for every cell.
    #[arg(long, default_value_t = table::TABLE_FP_MAX_ITERS)]
    fp_max_iters: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Tabulate the dense-output error instead of the grid error.
    #[arg(long)]
    dense_error: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    s: usize,
    #[command(flatten)]
    method: MethodArgs,
    /// Uniform step counts (comma separated).
    #[arg(long = "uniform-N", id = "uniform_n", value_delimiter = ',', conflicts_with = "h1")]
    uniform_n: Option<Vec<usize>>,
    /// First steps of graded meshes (comma separated).
    #[arg(long, value_delimiter = ',', requires = "r")]
    h1: Option<Vec<f64>>,
    /// Step ratio shared by the graded meshes.
    #[arg(long, requires = "h1")]
    r: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Success,
    SolverFailure,
}

fn run_solve(args: &SolveArgs) -> Result<Outcome, CliError> {
    let problem = find_problem(&args.problem)?;
    let mesh = match (args.uniform_n, args.h1, args.r) {
        (Some(n), None, None) => MeshSpec::Uniform { n },
        (None, Some(h1), Some(r)) => MeshSpec::Graded { h1, r },
        (None, None, None) => {
            return Err(CliError::InvalidArguments(
                "give either --uniform-N or both --h1 and --r".into(),
            ))
        }
        _ => {
            return Err(CliError::InvalidArguments(
                "--uniform-N cannot be combined with --h1/--r".into(),
            ))
        }
    };
    let start = Instant::now();
    let run = solve(&problem, args.method.config(args.s, mesh))?;
    let report = RunReport::from_run(&run, args.dense_error, start.elapsed());

    let content = match args.format {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report.to_csv(grid_errors(&run).as_deref()),
    };
    args.output.emit(&content)?;

    let error_text = report.max_error.map_or_else(|| "n/a".to_string(), sci3);
    eprintln!(
        "{}: {}/{} steps, max error {error_text}, {:.3} s",
        report.problem, report.steps_completed, report.n_steps, report.wall_time_s
    );
    match &report.failure {
        Some(failure) => {
            eprintln!("{}", failure.message);
            Ok(Outcome::SolverFailure)
        }
        None => Ok(Outcome::Success),
    }
}

fn run_table(args: &TableArgs) -> Result<Outcome, CliError> {
    let spec = TableSpec::get(args.id)?;
    let mut opts = TableOptions {
        p: args.p,
        fp_max_iters: args.fp_max_iters,
        dense_error: args.dense_error,
        ..TableOptions::default()
    };
    if let Some(tol) = args.fp_tol {
        opts.fp_tol = tol;
    }
    let result = table::compute(&spec, args.rows.as_deref(), opts)?;
    let content = match args.format {
        Format::Json => result.to_json()? + "\n",
        Format::Csv => result.to_csv(),
    };
    args.output.emit(&content)?;
    Ok(Outcome::Success)
}

fn run_convergence(args: &ConvergenceArgs) -> Result<Outcome, CliError> {
    let problem = find_problem(&args.problem)?;
    let meshes: Vec<MeshSpec> = match (&args.uniform_n, &args.h1, args.r) {
        (Some(ns), None, None) => ns.iter().map(|&n| MeshSpec::Uniform { n }).collect(),
        (None, Some(h1s), Some(r)) => h1s.iter().map(|&h1| MeshSpec::Graded { h1, r }).collect(),
        _ => {
            return Err(CliError::InvalidArguments(
                "give either --uniform-N or --h1 with --r".into(),
            ))
        }
    };
    let base = args.method.config(args.s, meshes[0]);
    let study = convergence::study(&problem, base, &meshes)?;
    let content = match args.format {
        Format::Json => study.to_json()? + "\n",
        Format::Csv => study.to_csv(),
    };
    args.output.emit(&content)?;
    if study.points.iter().any(|p| p.status == PointStatus::Failed) {
        return Ok(Outcome::SolverFailure);
    }
    Ok(Outcome::Success)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Table(args) => run_table(args),
        Command::Convergence(args) => run_convergence(args),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::SolverFailure) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
