use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kummer_core::cli::{self, Format, Output, EXIT_PARSE};

#[derive(Parser)]
#[command(name = "kummer", version)]
#[command(about = "Find radical generators of cyclic field extensions and certify them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,

    /// Write the report to FILE instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify F_{p^n} / F_p with the Frobenius automorphism
    Finite {
        /// Prime characteristic of the base field
        #[arg(long)]
        p: u64,
        /// Extension degree; must divide p - 1
        #[arg(long)]
        n: usize,
        /// Degree-ascending coefficients of a monic degree-n modulus, e.g. "-2,0,0,0,1"
        #[arg(long, allow_hyphen_values = true)]
        modulus: Option<String>,
        /// Include per-stage timings in the report
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Certify the extension described by a tower-spec JSON file
    Tower {
        spec: PathBuf,
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check a certificate (or a JSON run report containing one)
    Verify {
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run every Frobenius case with p <= max-p and n | p-1, n <= max-n
    Selftest {
        /// Largest prime to include
        #[arg(long)]
        max_p: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Worker threads; 0 picks one per core
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn format(common: &Common) -> Format {
    match common.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    }
}

fn emit(out: Output, path: Option<&PathBuf>) -> ExitCode {
    eprint!("{}", out.stderr);
    match path {
        Some(path) if !out.stdout.is_empty() => {
            if let Err(err) = std::fs::write(path, &out.stdout) {
                eprintln!("error: {}: {err}", path.display());
                return ExitCode::from(EXIT_PARSE as u8);
            }
        }
        _ => print!("{}", out.stdout),
    }
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    match args.command {
        Command::Finite {
            p,
            n,
            modulus,
            timing,
            common,
        } => emit(
            cli::cmd_finite(p, n, modulus.as_deref(), format(&common), timing),
            common.out.as_ref(),
        ),
        Command::Tower {
            spec,
            timing,
            common,
        } => emit(
            cli::cmd_tower(&spec, format(&common), timing),
            common.out.as_ref(),
        ),
        Command::Verify {
            certificate,
            common,
        } => emit(
            cli::cmd_verify(&certificate, format(&common)),
            common.out.as_ref(),
        ),
        Command::Selftest {
            max_p,
            max_n,
            jobs,
            common,
        } => emit(
            cli::cmd_selftest(max_p, max_n, jobs, format(&common)),
            common.out.as_ref(),
        ),
    }
}
