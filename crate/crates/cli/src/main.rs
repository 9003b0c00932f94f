//! `logseries`: evaluate, trace, verify and benchmark the repeated-square-root
//! logarithm series.
//!
//! Exit status: 0 when everything converged or passed, 1 on usage or domain
//! errors, 2 on non-convergence or a failed verification.

mod commands;
mod table;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use logseries::EvalConfig;

use commands::{CheckInputs, CheckKind, CmdResult, Status, UsageError};
use table::OutputFormat;

#[derive(Parser, Debug)]
#[command(
    name = "logseries",
    version,
    about = "Natural logarithm via a positive-term series of repeated square roots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate ln x and report the stopping diagnostics
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[command(flatten)]
        series: SeriesOpts,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
    },
    /// Emit u_k, term_k, S_k, D_k and the telescoping defect for k = 0..=n
    Trace {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
    },
    /// Verify an inequality or the quadrature oracle on given or random inputs
    Check(CheckArgs),
    /// Accuracy and timing over a log-spaced grid
    Bench {
        /// lo:hi:count, log-spaced with inclusive endpoints
        #[arg(long)]
        grid: String,
        #[command(flatten)]
        series: SeriesOpts,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
    },
}

#[derive(Args, Debug)]
struct SeriesOpts {
    #[arg(long, default_value = "1e-14", allow_negative_numbers = true)]
    tol: f64,
    #[arg(long, default_value_t = EvalConfig::DEFAULT_MAX_TERMS)]
    max_terms: u32,
}

impl SeriesOpts {
    fn config(&self) -> Result<EvalConfig, UsageError> {
        Ok(EvalConfig::new(
            self.tol,
            self.max_terms,
            EvalConfig::DEFAULT_SAFETY_FACTOR,
        )?)
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(value_enum)]
    kind: CheckKind,
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    /// Tangency point for `check tangent`
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Comma-separated positive values for `check amgm`
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    values: Option<Vec<f64>>,
    #[arg(long, default_value_t = logseries::QuadratureConfig::DEFAULT_PANELS)]
    panels: usize,
    #[arg(long, default_value_t = logseries::sampling::DEFAULT_SEED)]
    seed: u64,
    /// Number of random samples when no explicit input is given
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
}

/// Result, output format, and whether a PASS/FAIL verdict line belongs on stdout.
fn run(cli: Cli) -> (CmdResult, OutputFormat, bool) {
    match cli.command {
        Command::Eval { x, series, format } => (
            series
                .config()
                .and_then(|cfg| commands::eval(x, &cfg, format)),
            format,
            false,
        ),
        Command::Trace { x, n, format } => (commands::trace_table(x, n, format), format, false),
        Command::Check(args) => {
            let inputs = CheckInputs {
                x: args.x,
                a: args.a,
                y: args.y,
                lambda: args.lambda,
                values: args.values,
                panels: args.panels,
                seed: args.seed,
                count: args.count,
            };
            (
                commands::check(args.kind, &inputs, args.format),
                args.format,
                true,
            )
        }
        Command::Bench {
            grid,
            series,
            format,
        } => {
            let result = series.config().and_then(|cfg| {
                let grid = commands::parse_grid(&grid)?;
                commands::bench(&grid, &cfg, format)
            });
            (result, format, false)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        (Ok(report), format, verdict) => {
            print!("{}", report.stdout);
            let verdict = verdict && format == OutputFormat::Human;
            match (report.status, report.failure) {
                (Status::Pass, _) => {
                    if verdict {
                        println!("PASS");
                    }
                    ExitCode::SUCCESS
                }
                (Status::Fail, failure) => {
                    let msg = failure.unwrap_or_else(|| "verification failed".into());
                    if verdict {
                        println!("FAIL: {msg}");
                    } else {
                        eprintln!("FAIL: {msg}");
                    }
                    ExitCode::from(2)
                }
            }
        }
        (Err(UsageError(msg)), _, _) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
