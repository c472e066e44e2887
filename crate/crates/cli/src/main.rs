use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ellinv_cli::{execute, CliError, CliResult, Format, JobConfig, JobFile, Operation, Output, Overrides};

/// Inversion in an ellipse: points, curves, Pappus chains and figures.
#[derive(Debug, Parser)]
#[command(name = "ellinv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Image of a point, with the three construction oracles.
    InvertPoint,
    /// Exact image of a line or conic given in canonical text form.
    InvertCurve,
    /// Elliptic Pappus chain as CSV, SVG or JSON, with a verification report.
    Chain,
    /// Regenerate a figure as SVG.
    Figure {
        /// inversion, perpendicular, concurrent, parallel, homothetic,
        /// line-image, circle-image, parabola-image, hyperbola-image, chain
        id: Option<String>,
    },
    /// Run every property suite; exits nonzero on any failure.
    Selftest,
}

#[derive(Debug, Args)]
struct Opts {
    /// JSON job file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Semi-axis along the ellipse's first axis.
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<String>,
    /// Semi-axis along the ellipse's second axis.
    #[arg(long, global = true, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    cx: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    cy: Option<String>,
    /// Rotation of the ellipse axes, radians.
    #[arg(long, global = true, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Point as X,Y.
    #[arg(long, global = true, allow_hyphen_values = true)]
    point: Option<String>,
    /// Curve as `i,j:coeff;...`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    curve: Option<String>,
    /// Chain: length of the outer diameter AB.
    #[arg(long, global = true)]
    ab: Option<String>,
    /// Chain: AC / AB.
    #[arg(long, global = true)]
    r: Option<String>,
    /// Chain: vertical / horizontal axis ratio.
    #[arg(long, global = true)]
    k: Option<String>,
    /// Chain: number of elements.
    #[arg(short = 'n', global = true)]
    n: Option<usize>,
    /// json, csv or svg.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Relative tolerance.
    #[arg(long, global = true)]
    tol: Option<String>,
}

fn job(cli: Cli) -> CliResult<JobConfig> {
    let (operation, figure) = match cli.command {
        Command::InvertPoint => (Operation::InvertPoint, None),
        Command::InvertCurve => (Operation::InvertCurve, None),
        Command::Chain => (Operation::Chain, None),
        Command::Figure { id } => (Operation::Figure, id),
        Command::Selftest => (Operation::Selftest, None),
    };
    let o = cli.opts;
    let file = match &o.config {
        Some(path) => JobFile::load(path)?,
        None => JobFile::default(),
    };
    let overrides = Overrides {
        a: o.a,
        b: o.b,
        cx: o.cx,
        cy: o.cy,
        phi: o.phi,
        point: o.point,
        curve: o.curve,
        ab: o.ab,
        r: o.r,
        k: o.k,
        n: o.n,
        figure,
        format: o.format,
        out: o.out,
        seed: o.seed,
        tol: o.tol,
    };
    JobConfig::resolve(operation, file, overrides)
}

/// Artifact to `--out` or stdout. Report lines go to stdout, except when
/// they would corrupt an SVG or JSON artifact already on stdout.
fn emit(job: &JobConfig, out: &Output) -> CliResult<()> {
    let mut stdout = std::io::stdout().lock();
    let report = out.report.iter().map(|l| format!("{l}\n")).collect::<String>();
    let write_err = |source| CliError::Write { path: PathBuf::from("<stdout>"), source };
    match &job.out {
        Some(path) => {
            std::fs::write(path, &out.artifact).map_err(|source| CliError::Write { path: path.clone(), source })?;
            stdout.write_all(report.as_bytes()).map_err(write_err)?;
        }
        None => {
            stdout.write_all(out.artifact.as_bytes()).map_err(write_err)?;
            if matches!(out.format, Some(Format::Svg) | Some(Format::Json)) {
                eprint!("{report}");
            } else {
                stdout.write_all(report.as_bytes()).map_err(write_err)?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<Option<CliError>> {
    let job = job(cli)?;
    let out = execute(&job)?;
    emit(&job, &out)?;
    Ok(out.failure)
}

fn main() -> ExitCode {
    // usage errors are input errors (1); 2 is reserved for domain errors
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(err)) | Err(err) => {
            eprintln!("ellinv: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
