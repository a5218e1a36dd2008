use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ginzburg_dg::dsl;
use ginzburg_dg::report::{self, Command, Flags, RunError};

const COMMANDS: [&str; 13] = [
    "validate",
    "build-b",
    "build-gamma",
    "check-d2",
    "homology",
    "h0",
    "vosnex",
    "ideal-dim",
    "admissibility",
    "system-of-relations",
    "ext2",
    "split-ext-2",
    "report",
];

/// Ginzburg dg-algebras, truncated homology and admissible ideals of quivers with relations.
#[derive(Parser)]
#[command(name = "quiverdg", version)]
struct Cli {
    #[arg(value_parser = COMMANDS)]
    command: String,
    /// Problem file.
    file: PathBuf,
    #[arg(long)]
    m: Option<i64>,
    /// Truncation length (homology) or sampled path length (check-d2).
    #[arg(long)]
    max_len: Option<usize>,
    /// Search cap for the admissibility bound.
    #[arg(long)]
    max_n: Option<usize>,
    /// Seed for the sampled checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd: Command = cli.command.parse().expect("clap restricts commands");
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", cli.file.display());
            return ExitCode::from(2);
        }
    };
    let flags = Flags {
        m: cli.m,
        max_len: cli.max_len,
        max_n: cli.max_n,
        seed: cli.seed,
    };
    let result = dsl::parse(&text)
        .map_err(RunError::Parse)
        .and_then(|file| report::run(cmd, &file, &flags));
    let value = match result {
        Ok(v) => v,
        Err(RunError::Parse(diags)) => {
            for d in diags {
                eprintln!("{}:{d}", cli.file.display());
            }
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let out = report::emit_report(&value);
    match cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, out) {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{out}"),
    }
    ExitCode::SUCCESS
}
