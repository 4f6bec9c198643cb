//! `sobosvd`: experiment driver for low-rank approximation of periodic
//! functions under Sobolev norms. Every subcommand writes one CSV (plus an
//! optional SVG plot) and is deterministic: identical configuration gives
//! byte-identical output.

mod config;
mod expr;
mod output;
mod runs;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use config::{resolve, FileConfig, Overrides};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sobosvd",
    version,
    about = "Low-rank approximation experiments for periodic functions under Sobolev norms"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Per-rank singular values and approximation errors of a 2-D function
    SvdReport(CommonArgs),
    /// Verify the error bounds and spectral identities (exit 2 on violation)
    Bounds(CommonArgs),
    /// Spectral Galerkin runs with estimator-driven rank truncation
    Poisson(CommonArgs),
    /// Exponential-sum separable approximation report
    Expsum(CommonArgs),
    /// Unbounded-projection demonstration table
    Pathology(CommonArgs),
    /// Per-mode singular spectra of a 3-D function
    Hosvd3(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; flags below override fields of the same name
    #[arg(long)]
    config: Option<PathBuf>,
    /// Function tag (r06|absdiag|expcos|ring) or an expression in x and y
    #[arg(long)]
    function: Option<String>,
    /// Maximum frequency per direction
    #[arg(long)]
    n: Option<usize>,
    /// Quadrature oversampling factor (default 4 for expcos, 8 otherwise)
    #[arg(long)]
    q: Option<usize>,
    /// Largest rank reported
    #[arg(long)]
    rmax: Option<usize>,
    /// Exponential-sum accuracy target
    #[arg(long)]
    delta: Option<f64>,
    /// Comma-separated discretization levels (poisson) or spike indices (pathology)
    #[arg(long, value_delimiter = ',')]
    ns: Option<Vec<usize>>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG plot beside each CSV
    #[arg(long)]
    plot: bool,
    /// Include the 3-way bound checks (bounds subcommand)
    #[arg(long)]
    d3: bool,
}

/// Process-level error classification: 1 usage, 2 bound violation,
/// 3 numerical failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Violation(String),
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Violation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Violation(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<sobosvd::Error> for CliError {
    fn from(e: sobosvd::Error) -> Self {
        use sobosvd::Error::*;
        match e {
            SvdNoConvergence { .. }
            | NonFiniteSample { .. }
            | ExpSumTargetUnreachable { .. }
            | ExpSumIntervalTooSmall { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

fn load_file_config(path: &Option<PathBuf>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad config {}: {e}", p.display())))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (args, default_function, kind) = match &cli.command {
        Cmd::SvdReport(a) => (a, "r06", "svd-report"),
        Cmd::Bounds(a) => (a, "r06", "bounds"),
        Cmd::Poisson(a) => (a, "expcos", "poisson"),
        Cmd::Expsum(a) => (a, "r06", "expsum"),
        Cmd::Pathology(a) => (a, "r06", "pathology"),
        Cmd::Hosvd3(a) => (a, "r06", "hosvd3"),
    };
    let file = load_file_config(&args.config)?;
    let mut overrides = Overrides {
        function: args.function.clone(),
        n: args.n,
        q: args.q,
        rmax: args.rmax,
        delta: args.delta,
        ns: args.ns.clone(),
        out: args.out.clone(),
        plot: args.plot,
        d3: args.d3,
    };
    if kind == "pathology" && overrides.ns.is_none() && file.ns.is_none() {
        overrides.ns = Some(vec![1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1000]);
    }
    if kind == "hosvd3" && overrides.n.is_none() && file.n.is_none() {
        overrides.n = Some(8);
    }
    let cfg = resolve(file, overrides, default_function).map_err(CliError::Usage)?;

    let path = match &cli.command {
        Cmd::SvdReport(_) => runs::run_svd_report(&cfg)?,
        Cmd::Bounds(_) => runs::run_bounds(&cfg)?,
        Cmd::Poisson(_) => runs::run_poisson(&cfg)?,
        Cmd::Expsum(_) => runs::run_expsum(&cfg)?,
        Cmd::Pathology(_) => runs::run_pathology(&cfg)?,
        Cmd::Hosvd3(_) => runs::run_hosvd3(&cfg)?,
    };
    println!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
