//! Parses a problem file and prints a report, the same as
//! `quiverdg <command> <file>`.
//!
//! ```text
//! cargo run --example run_dsl -- report fixtures/quaternion.quiver 3
//! ```

use ginzburg_dg::report::{emit_report, run_text, Command, Flags};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (cmd, text, m) = match args.as_slice() {
        [cmd, file, rest @ ..] => (
            cmd.parse::<Command>()?,
            std::fs::read_to_string(file)?,
            rest.first().map(|s| s.parse()).transpose()?,
        ),
        _ => (
            Command::Homology,
            "vertex v\nrelation z : v -> v = 0\n".to_string(),
            Some(4),
        ),
    };
    let flags = Flags {
        m,
        ..Flags::default()
    };
    match run_text(cmd, &text, &flags) {
        Ok(v) => print!("{}", emit_report(&v)),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
    Ok(())
}
