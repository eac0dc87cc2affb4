//! `lazard`: JSON front end for the formal group law, s.n.c. divisor and
//! cobordism cycle evaluators.
//!
//! Exit status: 0 on success, 1 on I/O failure or unparseable JSON, 2 when
//! the input is well-formed JSON but fails validation (a JSON report is
//! written to standard output).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lazard_core::coeff::CoefficientBackend;

#[derive(Parser, Debug)]
#[command(
    name = "lazard",
    version,
    about = "Exact formal group law and cobordism cycle calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Formal group law series.
    #[command(subcommand)]
    Fgl(FglCommand),
    /// Strict normal crossing divisor classes.
    #[command(subcommand)]
    Snc(SncCommand),
    /// Cobordism cycle relations.
    #[command(subcommand)]
    Cycles(CyclesCommand),
}

#[derive(Subcommand, Debug)]
pub enum FglCommand {
    /// The formal inverse χ(u).
    Inverse(Common),
    /// The n-series [n]u; input `{"n": N}` unless `--n` is given.
    Nseries {
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// F^{n}(u_1, ..., u_r); input `{"n": [..]}` unless `--n` is given.
    Multilinear {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        n: Option<Vec<i64>>,
        #[command(flatten)]
        common: Common,
    },
    /// Support decomposition of a series, or of F^{n} for input `{"n": [..]}`.
    Decompose(Common),
}

#[derive(Subcommand, Debug)]
pub enum SncCommand {
    /// The divisor class of D.
    Divclass(Common),
    /// The product class of D and E.
    Prodclass(Common),
    /// Normal form of a face class vector given as `entries`.
    Normalform(Common),
    /// Symmetry, reduction, operator agreement and dimension checks.
    CheckProperties(Common),
}

#[derive(Subcommand, Debug)]
pub enum CyclesCommand {
    /// The double point relation of a degeneration.
    Dpr(Common),
    /// The telescoped relation of a blowup tower.
    BlowupTower(Common),
    /// A (Dim), (Sect) or (FGL) relation generator.
    Relgen(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input JSON: a file path, inline JSON, or `-` for standard input.
    pub input: Option<String>,
    /// Series truncation order.
    #[arg(long, env = "FGL_ORDER", default_value_t = lazard_core::fgl::DEFAULT_ORDER)]
    pub order: u32,
    /// Coefficient backend: free, log, additive or mult.
    #[arg(long, default_value = "free")]
    pub backend: CoefficientBackend,
    /// Indent the output.
    #[arg(long)]
    pub pretty: bool,
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match cli.command {
        Command::Fgl(c) => commands::fgl(c),
        Command::Snc(c) => commands::snc(c),
        Command::Cycles(c) => commands::cycles(c),
    };
    match result {
        Ok(value) => match commands::emit(&common, &value) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("lazard: {e}");
                ExitCode::from(1)
            }
        },
        Err(commands::Failure::Io(msg)) => {
            eprintln!("lazard: {msg}");
            ExitCode::from(1)
        }
        Err(commands::Failure::Invalid(report)) => {
            eprintln!(
                "lazard: {}",
                report["message"].as_str().unwrap_or("validation failed")
            );
            let _ = commands::emit(&common, &report);
            ExitCode::from(2)
        }
    }
}
