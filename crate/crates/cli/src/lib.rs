//! Command-line front end: JSON matrix documents in, verdicts and certificates out.
//!
//! Exit codes: 0 YES/pass, 1 NO/fail, 2 INCONCLUSIVE, 3 input error.

mod commands;
pub mod doc;
pub mod plot;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use doc::{CertificateDocument, MatrixDocument};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] ttoequiv::error::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        use ttoequiv::error::Error;
        match self {
            CliError::Core(Error::NonConverged(_)) | CliError::Core(Error::HypothesisViolation(_)) => EXIT_INCONCLUSIVE,
            CliError::Core(Error::NotUecsm(_)) => EXIT_NO,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ttoequiv", version, about = "Decide unitary equivalence to analytic truncated Toeplitz operators")]
struct Cli {
    /// Tolerance for the decision procedures.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Quadrature grid size (power of two, at least 256).
    #[arg(long, global = true, default_value_t = 2048)]
    grid: usize,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON documents instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Matrix document; standard input when omitted or `-`.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Route {
    /// Orthonormalized conjugate kernels (distinct zeros).
    Eigen,
    /// Takenaka–Malmquist basis, exact polynomial in the compressed shift.
    Tm,
    /// Takenaka–Malmquist basis by circle quadrature.
    Quadrature,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide and, on YES, print a certificate.
    Decide(InputArgs),
    /// Check a certificate against a matrix.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        cert: PathBuf,
    },
    /// 2x2 classification.
    Classify2(InputArgs),
    /// 3x3 determinant test.
    Dettest3(InputArgs),
    /// 3x3 trace-word test for complex symmetry.
    Tracetest3(InputArgs),
    /// 3x3 decomposition into truncated Toeplitz blocks.
    Decompose3(InputArgs),
    /// Complex-symmetric necessary condition.
    Csmtest(InputArgs),
    /// Equilateral counterexample matrix.
    Genfamily {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: f64,
        /// Comma-separated eigenvalues; `re` or `re:im`. Defaults to 1..n.
        #[arg(long)]
        eigs: Option<String>,
    },
    /// Matrix of A_φ on K_Θ.
    Build {
        /// JSON array of [re, im] zeros.
        #[arg(long)]
        zeros: String,
        /// JSON array of [re, im] Taylor coefficients.
        #[arg(long)]
        symbol: String,
        #[arg(long, value_enum, default_value_t = Route::Eigen)]
        route: Route,
    },
    /// Move (Θ, φ) by a disk automorphism ω (z - a)/(1 - conj(a) z).
    Transport {
        #[arg(long)]
        zeros: String,
        #[arg(long)]
        symbol: String,
        /// [re, im]
        #[arg(long)]
        a: String,
        /// [re, im], unimodular
        #[arg(long, default_value = "[1, 0]")]
        omega: String,
    },
    /// Random complex symmetric sampling experiment.
    Sample {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// SVG of a certificate's zeros.
    Plot {
        /// Certificate document; standard input when omitted or `-`.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Settings {
    tol: f64,
    grid: usize,
    seed: u64,
}

/// What a subcommand produced: an exit code, a text summary and a JSON document.
pub(crate) struct Report {
    code: i32,
    text: String,
    json: serde_json::Value,
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let settings = Settings { tol: cli.tol, grid: cli.grid, seed: cli.seed };
    match dispatch(cli.command, &settings, stdin) {
        Ok(report) => {
            let body = if cli.json {
                serde_json::to_string(&report.json).unwrap_or_default()
            } else {
                report.text
            };
            let _ = writeln!(stdout, "{}", body.trim_end());
            report.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, s: &Settings, stdin: &mut dyn Read) -> Result<Report, CliError> {
    use commands::*;
    match command {
        Command::Decide(i) => decide(&read_matrix(&i, stdin)?, s),
        Command::Verify { input, cert } => {
            let m = read_matrix(&input, stdin)?;
            let c = CertificateDocument::parse(&read_text(Some(&cert), stdin)?)?;
            verify(&m, &c, s)
        }
        Command::Classify2(i) => classify2(&read_matrix(&i, stdin)?, s),
        Command::Dettest3(i) => dettest3(&read_matrix(&i, stdin)?, s),
        Command::Tracetest3(i) => tracetest3(&read_matrix(&i, stdin)?, s),
        Command::Decompose3(i) => decompose3(&read_matrix(&i, stdin)?, s),
        Command::Csmtest(i) => csmtest(&read_matrix(&i, stdin)?, s),
        Command::Genfamily { n, g, eigs } => genfamily(n, g, eigs.as_deref()),
        Command::Build { zeros, symbol, route } => build(&zeros, &symbol, route, s),
        Command::Transport { zeros, symbol, a, omega } => transport(&zeros, &symbol, &a, &omega),
        Command::Sample { n, count } => sample(n, count, s),
        Command::Plot { cert, out } => {
            let c = CertificateDocument::parse(&read_text(cert.as_ref(), stdin)?)?;
            plot(&c, &out)
        }
    }
}

fn read_text(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })
        }
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            Ok(text)
        }
    }
}

fn read_matrix(args: &InputArgs, stdin: &mut dyn Read) -> Result<MatrixDocument, CliError> {
    MatrixDocument::parse(&read_text(args.input.as_ref(), stdin)?)
}
