//! `jordan`: Jordan decompositions and Lie closure checks from JSON requests.
//!
//! Exit codes: 0 computed and verified, 1 a verification or computation
//! failed, 2 invalid input, 3 singular matrix for a multiplicative request,
//! 4 exact mode requested but unavailable.

mod report;
mod request;
mod run;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use jordan_core::spectral::ModeRequest;
use jordan_core::JordanError;

use report::{TaskReport, Timing};
use request::{Operation, Overrides};
use run::Precision;

#[derive(Debug, Parser)]
#[command(name = "jordan", version, about = "Additive and multiplicative Jordan decompositions via witness polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// X = E + H + N
    Additive(TaskArgs),
    /// g = e·h·u
    Multiplicative(TaskArgs),
    /// Both decompositions of one matrix
    Both(TaskArgs),
    /// Semisimple, nilpotent, elliptic, hyperbolic and unipotent predicates
    Classify(TaskArgs),
    /// Eigenvalue relations of ad(S) for semisimple S
    #[command(name = "ad-spectrum")]
    AdSpectrum(TaskArgs),
    /// Eigenvalue relations of Ad(s) for invertible semisimple or unipotent s
    #[command(name = "Ad-spectrum")]
    AdGroupSpectrum(TaskArgs),
    /// Closure of a classical Lie algebra and group under Jordan decomposition
    #[command(name = "lie-closure")]
    LieClosure(TaskArgs),
}

#[derive(Debug, clap::Args)]
struct TaskArgs {
    /// Request JSON; standard input when absent
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report JSON; standard output when absent
    #[arg(long)]
    output: Option<PathBuf>,
    /// exact, numeric or auto [default: auto]
    #[arg(long)]
    mode: Option<String>,
    /// Positive verification tolerance [default: 1e-9]
    #[arg(long)]
    tolerance: Option<f64>,
    /// Base seed of the random corpora [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Corpus size per suite [default: 100]
    #[arg(long)]
    samples: Option<usize>,
    /// Add wall-clock timing to the report (makes it nondeterministic)
    #[arg(long)]
    timing: bool,
}

impl Command {
    fn split(self) -> (Operation, TaskArgs) {
        match self {
            Command::Additive(a) => (Operation::Additive, a),
            Command::Multiplicative(a) => (Operation::Multiplicative, a),
            Command::Both(a) => (Operation::Both, a),
            Command::Classify(a) => (Operation::Classify, a),
            Command::AdSpectrum(a) => (Operation::AdSpectrum, a),
            Command::AdGroupSpectrum(a) => (Operation::AdGroupSpectrum, a),
            Command::LieClosure(a) => (Operation::LieClosure, a),
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, JordanError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p)
                .map_err(|e| JordanError::InvalidInput(format!("cannot read {}: {e}", p.display())))?;
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| JordanError::InvalidInput(format!("cannot read standard input: {e}")))?;
        }
    }
    Ok(text)
}

fn task(op: Operation, args: &TaskArgs) -> TaskReport {
    let prepared = (|| {
        let precision = Precision::from_bits_var(std::env::var("JORDAN_PRECISION_BITS").ok().as_deref())?;
        let flags = Overrides {
            mode: args.mode.as_deref().map(str::parse::<ModeRequest>).transpose()?,
            tolerance: args.tolerance,
            seed: args.seed,
            samples: args.samples,
        };
        let req = request::build(op, &read_input(args.input.as_ref())?, &flags)?;
        Ok::<_, JordanError>((req, precision))
    })();
    match prepared {
        Ok((req, precision)) => run::run(&req, precision),
        Err(e) => TaskReport::failed(None, &e),
    }
}

fn emit(report: &TaskReport, output: Option<&PathBuf>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).map_err(std::io::Error::other)?;
    text.push('\n');
    match output {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let report = TaskReport::failed(None, &JordanError::InvalidInput(e.kind().to_string()));
            let _ = emit(&report, None);
            return ExitCode::from(2);
        }
    };
    let (op, args) = cli.command.split();
    let start = Instant::now();
    let mut report = task(op, &args);
    if args.timing {
        report.timing = Some(Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 });
    }
    if let Err(e) = emit(&report, args.output.as_ref()) {
        eprintln!("jordan: cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(report.exit_code as u8)
}
