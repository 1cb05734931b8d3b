//! Command-line front end: the same computations the library exposes, on
//! JSON chain files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use extbloch::io::{self, Input};
use extbloch::pipeline::{self, CheckStatus, InvariantReport};
use extbloch::selftest;

/// Invariants of decorated ideal triangulations: Bloch class, flattened
/// fundamental class, complex volume, and consistency verification.
#[derive(Parser)]
#[command(name = "extbloch", version, about)]
struct Cli {
    /// Numerical tolerance for the verification checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also run the exact integer-arithmetic wedge-identity suite.
    #[arg(long, global = true)]
    symbolic_checks: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all invariants of a chain file and print the full report.
    Invariants { file: PathBuf },
    /// Run the verification suite on a chain file.
    Verify { file: PathBuf },
    /// Rewrite a decorated chain with every simplex in canonical position.
    Canonicalize { file: PathBuf },
    /// Run the built-in self test battery.
    Selftest,
}

fn report_for(input: &Input, tol: f64, symbolic: bool) -> InvariantReport {
    match input {
        Input::Decorated(chain) => pipeline::verify(chain, tol, symbolic),
        Input::Shapes(shapes) => pipeline::verify_shapes(shapes, symbolic),
    }
}

fn print_report(report: &InvariantReport, json: bool, checks_only: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
        return;
    }
    if checks_only {
        for c in &report.checks {
            let mark = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            println!("{mark} {:<24} {}", c.name, c.detail);
        }
        println!(
            "overall        {}",
            if report.passed { "PASS" } else { "FAIL" }
        );
    } else {
        print!("{}", report.render_text());
    }
}

fn run(cli: &Cli) -> Result<bool, extbloch::Error> {
    match &cli.command {
        Command::Invariants { file } => {
            let input = io::parse_input_path(file)?;
            let report = report_for(&input, cli.tol, cli.symbolic_checks);
            print_report(&report, cli.json, false);
            Ok(report.passed)
        }
        Command::Verify { file } => {
            let input = io::parse_input_path(file)?;
            let report = report_for(&input, cli.tol, cli.symbolic_checks);
            print_report(&report, cli.json, true);
            Ok(report.passed)
        }
        Command::Canonicalize { file } => {
            let out = match io::parse_input_path(file)? {
                Input::Decorated(chain) => io::decorated_file(&chain.canonicalized()?),
                Input::Shapes(shapes) => io::shapes_file(&shapes),
            };
            print!("{}", io::render_json(&out));
            Ok(true)
        }
        Command::Selftest => {
            let results = selftest::run(cli.tol);
            let all = results.iter().all(|r| r.passed);
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&results).expect("results serialize")
                );
            } else {
                for r in &results {
                    println!(
                        "{} {:<24} {}",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        r.detail
                    );
                }
                println!("overall        {}", if all { "PASS" } else { "FAIL" });
            }
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
