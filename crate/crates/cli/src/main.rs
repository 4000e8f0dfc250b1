use std::path::PathBuf;
use std::process::ExitCode;

use car_verify::config::parse_suites;
use car_verify::{bench_multiply, emit_report, run_suite, Format, Report, Suite, SuiteConfig};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "car-verify",
    version,
    about = "Batch verification of the CAR even-subalgebra isomorphism"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites over m = 1..=dim-in.
    Run {
        #[arg(long, default_value_t = 4)]
        dim_in: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Comma-separated suite names; all suites by default.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the multiplication kernel on random sparse elements.
    Bench {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        density: f64,
        #[arg(long)]
        reps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const USAGE_ERROR: u8 = 2;

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE_ERROR)
}

fn finish(report: &Report, format: Format, out: Option<PathBuf>) -> ExitCode {
    let mut text = emit_report(report, format);
    if format == Format::Json {
        text.push('\n');
    }
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(USAGE_ERROR);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Run {
            dim_in,
            trials,
            seed,
            tol,
            format,
            suite,
            out,
        } => {
            let suites = match suite.as_deref().map(parse_suites) {
                None => Suite::ALL.to_vec(),
                Some(Ok(s)) => s,
                Some(Err(e)) => return usage_error(e),
            };
            let cfg = SuiteConfig {
                dim_in,
                trials,
                seed,
                tol,
                format,
                suites,
            };
            if let Err(e) = cfg.validate() {
                return usage_error(e);
            }
            finish(&run_suite(&cfg), format, out)
        }
        Command::Bench {
            dim,
            density,
            reps,
            seed,
            format,
            out,
        } => match bench_multiply(dim, density, reps, seed) {
            Ok(report) => finish(&report, format, out),
            Err(e) => usage_error(e),
        },
    }
}
