//! Command-line front end for the tree-cutting cost library.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "treecut", version, about = "Total cost of cutting random labelled trees with toll n²")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Output file. Defaults to `<command>.<format>` inside TREECUT_OUTPUT_DIR
    /// when that is set, otherwise standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, env = "TREECUT_OUTPUT_DIR", hide_env_values = true, global = true)]
    output_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Moments of the total cost for n = 1..=nmax.
    Moments(MomentsArgs),
    /// Moments of the limit law and its companion sequences.
    Limit(LimitArgs),
    /// Monte Carlo estimate of the rescaled cost moments.
    Simulate(SimulateArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    F32,
    F64,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    /// Exact rational arithmetic.
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Floating-point arithmetic (the default).
    #[arg(long)]
    float: bool,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    nmax: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    kmax: u64,
    /// Scalar width of the floating engine.
    #[arg(long, value_enum, default_value_t = Precision::F64)]
    precision: Precision,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, default_value_t = treecut::limit_law::DEFAULT_KMAX as u64, value_parser = clap::value_parser!(u64).range(1..))]
    kmax: u64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Tree size.
    #[arg(long, short, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    kmax: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Chain)]
    method: MethodArg,
    /// Worker threads; the report does not depend on this.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Tree,
    Chain,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated criterion numbers; all when omitted.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=10))]
    criteria: Vec<u8>,
    /// Double the tree weight c_N inside the moment engines.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    inject_fault: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

/// Process exit statuses.
mod exit {
    pub const USAGE: u8 = 1;
    pub const BUDGET: u8 = 2;
    pub const VERIFICATION: u8 = 3;
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(commands::Status::Ok) => ExitCode::SUCCESS,
        Ok(commands::Status::VerificationFailed) => ExitCode::from(exit::VERIFICATION),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
