mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use qubitfit_core::params_file::read_params;
use qubitfit_core::record::{run_csv, run_rows, write_fit_bundle, Summary};
use qubitfit_core::{
    cubic_coefficients, make_grid, max_pointwise_error, optimize_restarts, performance_index,
    reproduce, verify, Init, OptimizerConfig, TargetFunction,
};

use crate::config::{resolve_seed, FileConfig};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "qubitfit",
    version,
    about = "Fit functions with a two-qubit parameterized circuit"
)]
struct Cli {
    /// Config file (default: ./qubitfit.conf when present)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train circuit parameters against a target function
    Fit(FitArgs),
    /// Evaluate J and max error of a parameter file
    Eval(EvalArgs),
    /// Print the cubic Maclaurin coefficients a0..a3 of a parameter file
    Coeffs(CoeffsArgs),
    /// Run randomized self-checks of the simulator and the cubic truncation
    Verify(VerifyArgs),
    /// Re-run the three reference experiments and tabulate J
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Number of samples
    #[arg(long)]
    n: Option<usize>,
    /// Half-width of the sampled interval [-x0, x0]
    #[arg(long)]
    x0: Option<f64>,
}

#[derive(Args)]
struct FitArgs {
    /// quadratic | gaussian | sigmoid | poly:c0,c1,...
    #[arg(long)]
    target: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    /// Master seed (default: $QUBITFIT_SEED, else 42)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    sigma0: Option<f64>,
    #[arg(long)]
    sigma_shrink: Option<f64>,
    #[arg(long)]
    fail_streak: Option<usize>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    params: PathBuf,
    #[arg(long)]
    target: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
    /// Where to write the per-sample CSV
    #[arg(long, default_value = "eval-run.csv")]
    csv: PathBuf,
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long)]
    params: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long, default_value = "reproduce-out")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
}

/// A run that completed but did not meet its pass criteria.
#[derive(Debug)]
struct CheckFailed;

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("one or more checks failed")
    }
}

impl std::error::Error for CheckFailed {}

fn target_from(flag: Option<&str>, file: Option<&str>) -> Result<TargetFunction> {
    let id = flag.or(file).context("no target given (use --target)")?;
    Ok(id.parse()?)
}

fn grid_from(args: &GridArgs, file: &FileConfig) -> Result<qubitfit_core::SampleGrid> {
    let n = args.n.or(file.n).unwrap_or(reproduce::SAMPLES);
    let x0 = args.x0.or(file.x0).unwrap_or(reproduce::HALF_WIDTH);
    Ok(make_grid(n, x0)?)
}

fn fit(args: FitArgs, file: &FileConfig) -> Result<()> {
    let target = target_from(args.target.as_deref(), file.target.as_deref())?;
    let grid = grid_from(&args.grid, file)?;
    let defaults = OptimizerConfig::default();
    let cfg = OptimizerConfig {
        iterations: args
            .iterations
            .or(file.iterations)
            .unwrap_or(reproduce::ITERATIONS),
        sigma0: args.sigma0.or(file.sigma0).unwrap_or(defaults.sigma0),
        sigma_shrink: args
            .sigma_shrink
            .or(file.sigma_shrink)
            .unwrap_or(defaults.sigma_shrink),
        fail_streak: args
            .fail_streak
            .or(file.fail_streak)
            .unwrap_or(defaults.fail_streak),
        init: Init::Random,
        seed: resolve_seed(args.seed, file.seed)?,
    };
    cfg.validate()?;
    let restarts = args
        .restarts
        .or(file.restarts)
        .unwrap_or(reproduce::RESTARTS);
    let out = args
        .out
        .or_else(|| file.out.clone())
        .unwrap_or_else(|| PathBuf::from("qubitfit-out"));

    let result = optimize_restarts(&target, &grid, &cfg, restarts).map_err(|e| match e {
        qubitfit_core::Error::NonFiniteObjective { .. } => {
            anyhow::Error::new(CheckFailed).context(e)
        }
        other => other.into(),
    })?;
    let summary = Summary {
        j: result.best.j_final,
        epsilon: result.best.epsilon,
        evals: result.total_evals,
        seed: cfg.seed,
    };
    write_fit_bundle(&out, "fit", &target, &grid, &result.best, &summary)
        .with_context(|| format!("cannot write outputs to {}", out.display()))?;
    print!("{}", summary.to_text());
    println!("best restart = {}", result.best_restart);
    println!("outputs in {}", out.display());
    Ok(())
}

fn eval(args: EvalArgs, file: &FileConfig) -> Result<()> {
    let params = load_params(&args.params)?;
    let target = target_from(args.target.as_deref(), file.target.as_deref())?;
    let grid = grid_from(&args.grid, file)?;
    println!("J = {}", performance_index(&params, &target, &grid));
    println!("epsilon = {}", max_pointwise_error(&params, &target, &grid));
    std::fs::write(&args.csv, run_csv(&run_rows(&params, &target, &grid)))
        .with_context(|| format!("cannot write {}", args.csv.display()))?;
    Ok(())
}

fn coeffs(args: CoeffsArgs) -> Result<()> {
    let c = cubic_coefficients(&load_params(&args.params)?);
    for (k, a) in c.a.iter().enumerate() {
        println!("a{k} = {a}");
    }
    Ok(())
}

fn run_verify(args: VerifyArgs, file: &FileConfig) -> Result<()> {
    let seed = resolve_seed(args.seed, file.seed)?;
    let report = verify::run(args.trials as usize, seed)?;
    println!(
        "verify: {} trials, master seed {}",
        report.trials, report.seed
    );
    for s in &report.suites {
        let status = if s.passed { "PASS" } else { "FAIL" };
        print!(
            "{status} {:<20} worst = {:.3e}  {}",
            s.name, s.worst, s.detail
        );
        if let Some(bad) = s.failing_seed {
            print!("  (first failing draw seed = {bad})");
        }
        println!();
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(CheckFailed.into())
    }
}

fn run_reproduce(args: ReproduceArgs, file: &FileConfig) -> Result<()> {
    let seed = resolve_seed(args.seed, file.seed)?;
    let report = reproduce::run_default(seed)?;
    reproduce::write_outputs(&report, &args.out)
        .with_context(|| format!("cannot write outputs to {}", args.out.display()))?;
    print!("{}", report.markdown());
    println!("outputs in {}", args.out.display());
    if report.all_passed() {
        Ok(())
    } else {
        Err(CheckFailed.into())
    }
}

fn load_params(path: &Path) -> Result<qubitfit_core::CircuitParams> {
    read_params(path).with_context(|| format!("cannot load parameters from {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Fit(a) => fit(a, &file),
        Command::Eval(a) => eval(a, &file),
        Command::Coeffs(a) => coeffs(a),
        Command::Verify(a) => run_verify(a, &file),
        Command::Reproduce(a) => run_reproduce(a, &file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<CheckFailed>().is_some() => {
            eprintln!("qubitfit: {e:#}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(e) => {
            eprintln!("qubitfit: error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
