mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use splitkit::{Semantics, DEFAULT_GUARD};

#[derive(Parser, Debug)]
#[command(
    name = "splitkit",
    version,
    about = "Solve ABA frameworks and SETAFs directly or by splitting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the extensions of a framework.
    Solve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solve: SolveOpts,
        #[arg(long, value_enum, default_value_t = Mode::Direct)]
        mode: Mode,
    },
    /// Translate a flat ABA framework into a SETAF.
    Instantiate {
        #[command(flatten)]
        input: Input,
        /// Emit one attack per derivation leaf set, not only the minimal ones.
        #[arg(long)]
        all_supports: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute a splitting set (or, with --quasi, a quasi-splitting).
    FindSplit {
        #[command(flatten)]
        input: Input,
        /// Target size of the first part as a fraction of the whole.
        #[arg(long, default_value_t = 0.5)]
        balance: f64,
        #[arg(long)]
        quasi: bool,
        /// Print the dependency (or primal) graph in DOT instead.
        #[arg(long)]
        dot: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shorthand for `solve --mode split`.
    SplitSolve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solve: SolveOpts,
    },
    /// Shorthand for `solve --mode param --semantics stb`.
    ParamSplit {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solve: SolveOpts,
    },
    /// Generate a random framework.
    Gen {
        #[arg(long, value_enum, default_value_t = Format::Aba)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        size: GenSize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare split and direct solving on random frameworks.
    Check {
        #[arg(long, value_enum, default_value_t = Format::Aba)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value = "stb")]
        semantics: Semantics,
        #[arg(long, value_enum, default_value_t = Mode::Split)]
        mode: Mode,
        #[arg(long, default_value_t = 0.5)]
        balance: f64,
        #[arg(long, env = "SPLITKIT_GUARD", default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Input file, or `-` for standard input.
    path: PathBuf,
    /// Input format; detected from the header when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Reject rules that can never fire instead of dropping them.
    #[arg(long)]
    strict_dummy: bool,
}

#[derive(Args, Debug)]
struct SolveOpts {
    #[arg(long, default_value = "prf")]
    semantics: Semantics,
    /// File of 1-based ids forming the splitting set.
    #[arg(long)]
    split_set: Option<PathBuf>,
    /// Target fraction used when no split set is given.
    #[arg(long, default_value_t = 0.5)]
    balance: f64,
    /// Largest number of assumptions or arguments enumerated by brute force.
    #[arg(long, env = "SPLITKIT_GUARD", default_value_t = DEFAULT_GUARD)]
    guard: usize,
}

#[derive(Args, Debug, Clone, Copy)]
struct GenSize {
    #[arg(long, default_value_t = 5)]
    assumptions: usize,
    #[arg(long, default_value_t = 2)]
    extra_atoms: usize,
    #[arg(long, default_value_t = 6)]
    rules: usize,
    #[arg(long, default_value_t = 3)]
    max_body: usize,
    #[arg(long, default_value_t = 6)]
    args: usize,
    #[arg(long, default_value_t = 8)]
    attacks: usize,
    #[arg(long, default_value_t = 3)]
    max_tail: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Aba,
    Setaf,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Direct,
    Split,
    Param,
}

/// Raised by `check` when split and direct solving disagree.
#[derive(Debug)]
struct Mismatch;

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("split and direct results differ")
    }
}

impl std::error::Error for Mismatch {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Mismatch>().is_some() {
        return 4;
    }
    match err.downcast_ref::<splitkit::Error>() {
        Some(splitkit::Error::Parse { .. }) => 2,
        Some(_) => 3,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(exit_code(&anyhow::Error::new(Mismatch)), 4);
        assert_eq!(
            exit_code(&splitkit::Error::Validation("x".into()).into()),
            3
        );
        assert_eq!(exit_code(&anyhow::anyhow!("io")), 1);
        let parse = anyhow::Error::new(splitkit::format::parse_aba("p aba 1\nz\n").unwrap_err());
        assert_eq!(exit_code(&parse.context("in file")), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
