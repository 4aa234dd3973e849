use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use numrad_core::bounds::{optimize_lambda, optimize_lambda_numeric, BoundInputs, SingleOperator};
use numrad_core::harness::{
    emit_report, run_suite, to_json_string, Ensemble, EnsembleConfig, ReportFormat, SuiteOptions,
};
use numrad_core::radius::{numerical_radius, numerical_radius_oracle, DEFAULT_TOL};
use numrad_core::{BoundId, BoundMode, BoundParams, ChainId, ComplexMatrix};

/// Numerical radius engine and bound verifier.
#[derive(Parser)]
#[command(name = "numrad", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded verification suite over a random ensemble.
    Verify(VerifyArgs),
    /// Evaluate one bound on a matrix file.
    Bound(BoundArgs),
    /// Minimize a bound over lambda.
    Optimize(OptimizeArgs),
    /// Numerical radius of a matrix file.
    Radius(RadiusArgs),
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 1.5)]
    r: f64,
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_with::<Ensemble>)]
    ensemble: Ensemble,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Comma-separated bound identifiers; all bounds when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_with::<BoundId>)]
    bounds: Option<Vec<BoundId>>,
    /// Comma-separated chain identifiers; all chains when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_with::<ChainId>)]
    chains: Option<Vec<ChainId>>,
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.5,1,2,100")]
    lambda_grid: Vec<f64>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_parser = parse_with::<ReportFormat>, default_value = "json")]
    format: ReportFormat,
    /// Evaluate trials on all cores; the report is identical either way.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    matrix: PathBuf,
    /// Second operator `S` for product bounds; defaults to `T`.
    #[arg(long)]
    second: Option<PathBuf>,
    #[arg(long, value_parser = parse_with::<BoundId>)]
    bound: BoundId,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[command(flatten)]
    params: ParamArgs,
    /// Report only this mode; both modes of implicit bounds otherwise.
    #[arg(long, value_parser = parse_with::<BoundMode>)]
    mode: Option<BoundMode>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    second: Option<PathBuf>,
    #[arg(long, value_parser = parse_with::<BoundId>)]
    bound: BoundId,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_parser = parse_with::<BoundMode>, default_value = "inequality-check")]
    mode: BoundMode,
    /// Use the golden-section search even for homographic forms.
    #[arg(long)]
    numeric: bool,
}

#[derive(Args)]
struct RadiusArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Also run the random-ascent lower-bound oracle with this many samples.
    #[arg(long)]
    oracle_samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_with<T>(s: &str) -> std::result::Result<T, String>
where
    T: std::str::FromStr<Err = numrad_core::Error>,
{
    s.parse().map_err(|e: numrad_core::Error| e.to_string())
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing matrix file {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    print!("{}", to_json_string(value)?);
    Ok(())
}

fn params(p: &ParamArgs, lambda: f64) -> BoundParams {
    BoundParams {
        lambda,
        r: p.r,
        n: p.n,
        alpha: p.alpha,
    }
}

/// Runs a command and reports whether every checked inequality held.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify(a) => {
            let config = EnsembleConfig::new(a.ensemble, a.dim, a.trials, a.seed)?;
            let opts = SuiteOptions {
                bounds: a.bounds.unwrap_or_else(|| BoundId::ALL.to_vec()),
                chains: a.chains.unwrap_or_else(|| ChainId::ALL.to_vec()),
                lambda_grid: a.lambda_grid,
                r: a.params.r,
                n: a.params.n,
                alpha: a.params.alpha,
                parallel: a.parallel,
            };
            let report = run_suite(&config, &opts)?;
            emit_report(&report, a.format, &a.out).with_context(|| format!("writing {}", a.out.display()))?;
            eprintln!(
                "{} bound rows, {} chain rows, {} violations",
                report.bound_rows.len(),
                report.chain_rows.len(),
                report.violations
            );
            Ok(report.passed())
        }
        Command::Bound(a) => {
            let t = SingleOperator::new(read_matrix(&a.matrix)?)?;
            let s = a
                .second
                .as_deref()
                .map(read_matrix)
                .transpose()?
                .map(SingleOperator::new)
                .transpose()?;
            let inputs = match &s {
                Some(s) => BoundInputs::pair(&t, s)?,
                None => BoundInputs::single(&t),
            };
            let form = inputs.form(a.bound, &params(&a.params, a.lambda))?;
            let results = match a.mode {
                Some(mode) => vec![form.evaluate_mode(a.lambda, mode)?],
                None => form.evaluate(a.lambda)?,
            };
            print_json(&results)?;
            Ok(results.iter().all(|r| r.holds))
        }
        Command::Optimize(a) => {
            let t = SingleOperator::new(read_matrix(&a.matrix)?)?;
            let s = a
                .second
                .as_deref()
                .map(read_matrix)
                .transpose()?
                .map(SingleOperator::new)
                .transpose()?;
            let inputs = match &s {
                Some(s) => BoundInputs::pair(&t, s)?,
                None => BoundInputs::single(&t),
            };
            let form = inputs.form(a.bound, &params(&a.params, 1.0))?;
            let opt = if a.numeric {
                optimize_lambda_numeric(&form, a.mode)?
            } else {
                optimize_lambda(&form, a.mode)?
            };
            print_json(&opt)?;
            Ok(true)
        }
        Command::Radius(a) => {
            #[derive(Serialize)]
            struct Radius {
                w: f64,
                oracle: Option<f64>,
            }
            let m = read_matrix(&a.matrix)?;
            let w = numerical_radius(&m, a.tol)?;
            let oracle = a.oracle_samples.map(|k| numerical_radius_oracle(&m, k.max(1), a.seed));
            print_json(&Radius { w, oracle })?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
