use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use disconnected_core::cli::{execute, Command, Format, Options};

/// Classify disconnected reductive groups with given identity component and component group.
#[derive(Parser, Debug)]
#[command(name = "disconnected", version)]
struct Args {
    /// classify, weyl, dynkin, center or check
    #[arg(value_enum)]
    command: Command,
    /// Problem file (JSON); `-` or omitted reads stdin.
    #[arg(long, short)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Cap on torsion-tower levels.
    #[arg(long)]
    max_k: Option<usize>,
    /// Cap on cochain coordinates per cohomology computation.
    #[arg(long)]
    budget: Option<usize>,
    /// Seed for the randomized checks in `check`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map(|_| s)
                .map_err(|e| format!("cannot read stdin: {e}"))
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let overrides = Options {
        max_k: args.max_k,
        budget: args.budget,
        ..Options::default()
    };
    let (out, code) = execute(args.command, &text, args.format, &overrides, args.seed);
    print!("{out}");
    ExitCode::from(code as u8)
}
