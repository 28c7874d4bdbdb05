use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tvar_cli::{load_problem, run, RunOptions};

#[derive(Parser)]
#[command(name = "tvar", version, about = "Torus actions on affine toric varieties with real structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a lattice involution into split, circle and Weil factors.
    Classify(Common),
    /// Downgrade an embedded torus action to a polyhedral divisor.
    Downgrade(Common),
    /// Evaluate a polyhedral divisor on weights.
    #[command(name = "eval")]
    Evaluate(Common),
    /// Check the pp-conditions of a polyhedral divisor.
    CheckPp(Common),
    /// Check compatibility of a divisor with the real structures.
    CheckReal(Common),
    /// Split a character cocycle or report the obstruction.
    Split(Common),
    /// Enumerate graded pieces and the real structure on them.
    Sections(Common),
    /// Compare graded pieces with monomial counts of the ambient ring.
    OracleCheck(Common),
}

#[derive(Args)]
struct Common {
    file: PathBuf,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Size of the weight grid used by sweeps.
    #[arg(long, default_value_t = 6)]
    grid: u32,
    /// Degree bound for monomial enumeration.
    #[arg(long, default_value_t = 6)]
    degree_bound: u32,
}

impl Command {
    fn parts(&self) -> (&'static str, &Common) {
        match self {
            Command::Classify(c) => ("classify", c),
            Command::Downgrade(c) => ("downgrade", c),
            Command::Evaluate(c) => ("evaluate", c),
            Command::CheckPp(c) => ("check-pp", c),
            Command::CheckReal(c) => ("check-real", c),
            Command::Split(c) => ("split", c),
            Command::Sections(c) => ("sections", c),
            Command::OracleCheck(c) => ("oracle-check", c),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = cli.command.parts();
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    let problem = match load_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    if problem.kind() != kind {
        eprintln!("error: {} holds a `{}` problem, not `{kind}`", args.file.display(), problem.kind());
        return ExitCode::from(2);
    }
    let opts = RunOptions {
        grid: args.grid,
        degree_bound: args.degree_bound,
    };
    let report = match run(&problem, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    match report.first_failure() {
        None => ExitCode::SUCCESS,
        Some(c) => {
            eprintln!("check failed: {}", c.name);
            ExitCode::from(1)
        }
    }
}
