use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use klr_cli::{atomic_write, run, CliError, Command};

#[derive(Parser)]
#[command(name = "klr", version, about = "Exact verification pipelines for KLR algebras and quantum affine duality")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded dimensions of e(μ)R(β)e(ν): closed formula against brute force, plus the relation suite
    KlrDim(Common),
    /// Cyclotomic quotient: graded dimensions, Gram comparison, projective count
    Cyclotomic(Common),
    /// Shapovalov form, Gram matrices and ranks
    Shapovalov(Common),
    /// Normalized R-matrix: uniqueness, denominator, Yang-Baxter
    Rmatrix(Common),
    /// Fusion of consecutive vector representations
    Fusion(Common),
    /// Quiver, Cartan matrix and Q-polynomials from a duality datum
    QuiverFromDenominators(Common),
    /// The map φ from the repetition quiver to positive roots
    PhiMap(Common),
    /// Cartan matrix and quiver of the C_Q duality datum
    VerifyG0(Common),
    /// sl_2 character identities, K-group commutator and resolution shadow
    VerifySl2(Common),
}

#[derive(Args)]
struct Common {
    /// TOML config; defaults are used for absent keys
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the config's q-degree cutoff
    #[arg(long, allow_negative_numbers = true)]
    cutoff: Option<i64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory of cached reports keyed by input hash
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

fn split(cmd: Cmd) -> (Command, Common) {
    match cmd {
        Cmd::KlrDim(c) => (Command::KlrDim, c),
        Cmd::Cyclotomic(c) => (Command::Cyclotomic, c),
        Cmd::Shapovalov(c) => (Command::Shapovalov, c),
        Cmd::Rmatrix(c) => (Command::Rmatrix, c),
        Cmd::Fusion(c) => (Command::Fusion, c),
        Cmd::QuiverFromDenominators(c) => (Command::QuiverFromDenominators, c),
        Cmd::PhiMap(c) => (Command::PhiMap, c),
        Cmd::VerifyG0(c) => (Command::VerifyG0, c),
        Cmd::VerifySl2(c) => (Command::VerifySl2, c),
    }
}

fn main_inner(command: Command, c: Common) -> Result<bool, CliError> {
    let text = match &c.config {
        Some(p) => Some(fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let cache = if c.no_cache { None } else { c.cache.as_deref() };
    let out = run(command, text.as_deref(), c.cutoff, cache)?;
    match &c.out {
        Some(p) => atomic_write(p, out.report.as_bytes())?,
        None => print!("{}", out.report),
    }
    Ok(out.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, c) = split(cli.cmd);
    match main_inner(command, c) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("{}: verdict failure", command.name());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
