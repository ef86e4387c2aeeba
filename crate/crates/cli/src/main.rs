use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tl_cli::commands::{self, Report};
use tl_cli::config::{Format, NRange, Route, RunConfig, DEFAULT_MAX_RANK_N};
use tl_cli::error::{CliError, EXIT_DISAGREEMENT, EXIT_OK, EXIT_USAGE};
use tl_cli::output::{object, render};
use tl_cli::verify::{self, Suite, VerifyOptions};

/// Exact dimension tables and checks for Temperley-Lieb quotients at roots of unity.
#[derive(Parser, Debug)]
#[command(name = "tlq", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Table {
    /// Root-of-unity order l (q^2 a primitive l-th root of unity).
    #[arg(long, default_value_t = 4)]
    level: u32,
    /// Strand counts, `a..b` inclusive or a single `n`.
    #[arg(long, default_value = "2..10")]
    n: NRange,
    /// Comma-separated routes to compute and compare.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = Route::ALL.to_vec())]
    routes: Vec<Route>,
    /// Largest n for which Gram ranks are computed.
    #[arg(long, default_value_t = DEFAULT_MAX_RANK_N)]
    max_rank_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cell dimensions w_t(n), simple dimensions l_t(n) and dim Q_n(l) on every route.
    Dims {
        #[command(flatten)]
        table: Table,
        #[command(flatten)]
        common: Common,
    },
    /// The Jones-Wenzl idempotent E_{l-1} with its coefficients.
    Jw {
        #[arg(long, default_value_t = 4)]
        level: u32,
        /// Refuse idempotents with more basis terms than this.
        #[arg(long, default_value_t = commands::DEFAULT_MAX_JW_TERMS)]
        max_terms: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Gram ranks of every cell module against the alternating-sum formula.
    GramRank {
        #[command(flatten)]
        table: Table,
        #[command(flatten)]
        common: Common,
    },
    /// dim Q_n(l) per route, including Catalan(n) - dim J for n <= 8.
    Quotient {
        #[command(flatten)]
        table: Table,
        #[command(flatten)]
        common: Common,
    },
    /// Clifford realization of the l = 4 quotient.
    CliffordCheck {
        #[arg(long, default_value = "3..8")]
        n: NRange,
        #[command(flatten)]
        common: Common,
    },
    /// Catalan numbers and generating-function identities.
    Catalan {
        #[arg(long = "K", default_value_t = 20)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long = "K", default_value_t = 20)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn run_config(t: Table, c: &Common) -> Result<RunConfig, CliError> {
    RunConfig { level: t.level, n: t.n, routes: t.routes, format: c.format, out: c.out.clone(), max_rank_n: t.max_rank_n, seed: t.seed }
        .validate()
}

fn emit(text: &str, common: &Common) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_report(r: Report, common: &Common) -> Result<bool, CliError> {
    emit(&render(&r.meta, &r.rows, common.format)?, common)?;
    Ok(r.ok)
}

fn run(cmd: Command) -> Result<bool, CliError> {
    match cmd {
        Command::Dims { table, common } => {
            let cfg = run_config(table, &common)?;
            emit_report(commands::dims(&cfg)?.into_report()?, &common)
        }
        Command::Jw { level, max_terms, common } => emit_report(commands::jw(level, max_terms)?, &common),
        Command::GramRank { table, common } => emit_report(commands::gram_rank(&run_config(table, &common)?)?, &common),
        Command::Quotient { table, common } => emit_report(commands::quotient(&run_config(table, &common)?)?, &common),
        Command::CliffordCheck { n, common } => emit_report(commands::clifford_check(n)?, &common),
        Command::Catalan { order, common } => emit_report(commands::catalan_table(order)?, &common),
        Command::Verify { suite, level, max_n, order, seed, common } => {
            let reports = verify::run(suite, &VerifyOptions { level, max_n, order, seed })?;
            let ok = reports.iter().all(|r| r.passed);
            let text = match common.format {
                Format::Json if reports.len() == 1 => serde_json::to_string_pretty(&reports[0])? + "\n",
                Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
                f => {
                    let rows: Vec<_> = reports
                        .iter()
                        .flat_map(|r| {
                            r.checks.iter().map(move |c| {
                                object([
                                    ("suite", json!(r.suite)),
                                    ("name", json!(c.name)),
                                    ("passed", json!(c.passed)),
                                    ("detail", json!(c.detail)),
                                ])
                            })
                        })
                        .collect();
                    render(&json!({ "passed": ok }), &rows, f)?
                }
            };
            emit(&text, &common)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::from(EXIT_OK),
        Ok(false) => {
            eprintln!("tlq: routes disagree or a check failed");
            ExitCode::from(EXIT_DISAGREEMENT)
        }
        Err(e) => {
            eprintln!("tlq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
