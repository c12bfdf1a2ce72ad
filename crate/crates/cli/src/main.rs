use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use dpic_core::expr::{evaluate, parse_in, Scope, WeylTarget};
use dpic_core::suites::{run_suite, SuiteParams, SUITES};
use dpic_core::weyl::WeylContext;
use dpic_core::Error;

#[derive(Parser)]
#[command(name = "dpic", version, about = "Exact verification of Weyl-algebra Brauer classes and derived Picard groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        cprime: Option<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run kernels on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// List the available suites.
    Suites,
    /// Normalize an expression in A_n(F_p) and print it canonically.
    Eval {
        expr: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Suites => {
            for s in SUITES {
                println!("{s}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { expr, p, n } => {
            let ctx = WeylContext::new(p, n)?;
            let parsed = match parse_in(&expr, Scope::weyl(ctx)) {
                Ok(e) => e,
                Err(Error::Parse { pos, msg }) => {
                    eprintln!("{expr}\n{}^ {msg}", " ".repeat(pos));
                    return Ok(ExitCode::from(USAGE));
                }
                Err(e) => return Err(e.into()),
            };
            println!("{}", evaluate(&parsed, &WeylTarget(ctx))?.to_canonical_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            p,
            n,
            c,
            cprime,
            seed,
            format,
            out,
            sequential,
        } => {
            let params = SuiteParams {
                p,
                n,
                c,
                cprime,
                seed,
                exec: if sequential {
                    dpic_core::par::Execution::Sequential
                } else {
                    Default::default()
                },
            };
            let report = run_suite(&suite, &params)?;
            let rendered = match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            match out {
                Some(path) => fs::write(&path, &rendered).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{rendered}"),
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
