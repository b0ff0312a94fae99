//! `adesurf`: enumerate curve classes and run the exact weight and Cox-ring
//! checks for ADE-surfaces from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on invalid
//! input.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use adesurf::curves::CurveKind;
use adesurf::Kind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{FileConfig, RunConfig};
use crate::output::{CliError, Format, Output};

#[derive(Parser)]
#[command(
    name = "adesurf",
    version,
    about = "Exact computations on ADE-surfaces"
)]
struct Cli {
    /// Output format (selftest prints a plain table unless a format is given).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// TOML file supplying family, n, points, max_degree, max_k or format.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArgs {
    /// A, D or E.
    #[arg(long)]
    family: Option<Kind>,

    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Roots,
    Lines,
    Rulings,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Sym2,
    Weights,
    Hilbert,
    Census,
    Git,
}

#[derive(Subcommand)]
enum Command {
    /// List all roots, lines or rulings.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Run one family of checks.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        which: Which,
        /// Comma-separated distinct rationals, e.g. 0,1/2,3.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long)]
        max_degree: Option<i64>,
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Emit the explicit polynomial systems.
    Quadrics {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Run the full acceptance suite.
    Selftest,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let format = match (cli.format, &file.format) {
        (Some(f), _) => Some(f),
        (None, Some(s)) => Some(config::parse_format(s)?),
        (None, None) => None,
    };
    let (out, text) = match &cli.command {
        Command::Enumerate { family, what } => {
            let fam = config::family(family.family, family.n, &file)?;
            let kind = match what {
                What::Roots => CurveKind::Roots,
                What::Lines => CurveKind::Lines,
                What::Rulings => CurveKind::Rulings,
            };
            (commands::enumerate(fam, kind)?, None)
        }
        Command::Verify {
            family,
            which,
            points,
            max_degree,
            max_k,
        } => {
            let fam = config::family(family.family, family.n, &file)?;
            let cfg: RunConfig =
                config::run_config(fam, points.as_deref(), *max_degree, *max_k, &file)?;
            let out = match which {
                Which::Sym2 => commands::verify_sym2(fam)?,
                Which::Weights => commands::verify_weights(fam)?,
                Which::Hilbert => commands::verify_hilbert(&cfg)?,
                Which::Census => commands::verify_census(fam)?,
                Which::Git => commands::verify_git(&cfg)?,
            };
            (out, None)
        }
        Command::Quadrics {
            family,
            points,
            max_degree,
        } => {
            let fam = config::family(family.family, family.n, &file)?;
            let cfg = config::run_config(fam, points.as_deref(), *max_degree, None, &file)?;
            (commands::quadrics(&cfg)?, None)
        }
        Command::Selftest => {
            let out = commands::selftest();
            let text = commands::selftest_text(&out);
            (out, Some(text))
        }
    };
    let rendered = match (format, text) {
        (None, Some(text)) => text,
        (f, _) => out.render(f.unwrap_or(Format::Json))?,
    };
    emit(&out, &rendered, cli.out.as_deref())?;
    Ok(out.passed)
}

fn emit(out: &Output, rendered: &str, path: Option<&std::path::Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, rendered)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{rendered}"),
    }
    if !out.passed {
        eprintln!("adesurf: {} reported failing checks", out.command);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("adesurf: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
