use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use qid::congruence::{scan_congruences, verify_parity_family, verify_power_of_three_family};
use qid::dsl::{eval, parse, parse_expr, run, Env, RunConfig};
use qid::report::Report;

#[derive(Parser)]
#[command(
    name = "qid",
    version,
    about = "Expand eta quotients and verify q-series claims"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every claim of a claim file; exits 0 iff all pass.
    Verify {
        file: PathBuf,
        /// Order for every claim (default: 500 for identities, 2000 for congruences).
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Print coefficients of an expression as `exponent<TAB>integer`.
    Expand {
        expr: String,
        #[arg(long)]
        order: i64,
        /// Reduce coefficients into [0, M).
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Search for congruences a(An+B) == 0 mod M.
    Scan {
        #[arg(long)]
        series: String,
        #[arg(long)]
        max_step: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
        #[arg(long, default_value_t = 2000)]
        order: i64,
    },
    /// Verify a parameterized family for k = 1..=kmax.
    Family {
        family: Family,
        #[arg(long)]
        kmax: u32,
        #[arg(long, default_value_t = 2000)]
        order: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// CP3(3^k n + 3^k - 2) == CP3(n-1) mod 2
    #[value(name = "cor34", alias = "parity")]
    Parity,
    /// CP3(2*3^k n + 3^k - 2) == 0 mod 2*3^(k-1), with its coefficient recursions
    #[value(name = "thm39", alias = "power-of-three")]
    PowerOfThree,
}

/// Writes a line to stdout; a closed pipe is not an error worth reporting.
fn emit(line: impl std::fmt::Display) {
    let _ = writeln!(io::stdout().lock(), "{line}");
}

fn print_report(report: &Report, json: bool) -> ExitCode {
    if json {
        emit(serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
    } else {
        emit(report);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { file, order, json } => {
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return fail(format_args!("{}: {e}", file.display())),
            };
            let claims = match parse(&text) {
                Ok(c) => c,
                Err(e) => return fail(format_args!("{}: {e}", file.display())),
            };
            let config = order.map_or_else(RunConfig::default, RunConfig::uniform);
            print_report(&run(&claims, &config), json)
        }
        Command::Expand {
            expr,
            order,
            modulus,
        } => {
            let parsed = match parse_expr(&expr) {
                Ok(e) => e,
                Err(e) => return fail(e),
            };
            let series = match eval(&parsed, order, &Env::new()) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let series = match modulus {
                Some(0) => return fail("modulus must be positive"),
                Some(m) => series.reduce_mod(&BigInt::from(m)),
                None => series,
            };
            for (e, c) in series.terms() {
                emit(format_args!("{e}\t{c}"));
            }
            ExitCode::SUCCESS
        }
        Command::Scan {
            series,
            max_step,
            moduli,
            order,
        } => {
            let expr = match parse_expr(&series) {
                Ok(e) => e,
                Err(e) => return fail(e),
            };
            match scan_congruences(&expr, max_step, &moduli, order, &Env::new()) {
                Ok(hits) => {
                    for h in hits {
                        emit(h);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Family {
            family,
            kmax,
            order,
            json,
        } => {
            if kmax == 0 {
                return fail("kmax must be at least 1");
            }
            let claims = match family {
                Family::Parity => verify_parity_family(kmax, order),
                Family::PowerOfThree => verify_power_of_three_family(kmax, order),
            };
            print_report(&Report { order, claims }, json)
        }
    }
}
