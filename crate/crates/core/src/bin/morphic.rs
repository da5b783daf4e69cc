use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use morphic::cli::{self, verify};
use morphic::oracle::DEFAULT_BUDGET;

/// Weakly-morphic and morphic predicates for finitely generated abelian groups.
#[derive(Parser)]
#[command(name = "morphic", version)]
struct Args {
    /// Print a generation timestamp to stderr.
    #[arg(long, global = true)]
    timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every predicate for one group, e.g. "Z/2 + Z/4" or "Z^2 + Z/6".
    Check {
        expr: String,
        /// Cross-check finite groups against endomorphism enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
        /// Maximum number of endomorphisms the oracle may enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Tabulate all isomorphism classes of order at most MAX_ORDER.
    Census {
        max_order: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES))]
        suite: String,
        /// Suite size: maximum group order, modulus product or sample count.
        #[arg(long)]
        max_order: Option<u64>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        eprintln!("generated at unix time {secs}");
    }
    let outcome = match args.command {
        Command::Check {
            expr,
            oracle,
            json,
            budget,
        } => cli::cmd_check(&expr, oracle, json, budget).map(|out| (out, true)),
        Command::Census { max_order, json } => cli::cmd_census(max_order, json).map(|out| (out, true)),
        Command::Verify { suite, max_order } => {
            verify::run_suite(&suite, max_order).map(|r| (r.to_string(), r.passed()))
        }
    };
    match outcome {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(cli::EXIT_DISAGREEMENT as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
