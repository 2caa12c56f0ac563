//! `twogroup` command-line front end.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "twogroup",
    version,
    about = "Check, strictify and convert finite 2-groups and crossed modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate any supported document.
    Validate(Opts),
    /// Strictify a semistrict coherent 2-group.
    Strictify(Opts),
    /// Strictify a 2-group and read off its crossed module.
    ExtractXmod(Opts),
    /// Build the strict 2-group of a crossed module.
    #[command(name = "xmod-to-2group")]
    XmodTo2group(Opts),
    /// Check principality of a bibundle.
    BibundleCheck(Opts),
    /// Build the nerve of a groupoid or crossed module.
    Nerve(Opts),
    /// Check horn filling conditions.
    KanCheck(Opts),
    /// Fundamental group of the quotient of an equivariant complex.
    Pi1(Opts),
    /// Crossed module → strict 2-group → crossed module, up to isomorphism.
    Roundtrip(Opts),
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    #[arg(long, value_name = "PATH")]
    pub twogroup: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub xmod: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub groupoid: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub complex: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub simplicial: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub bibundle: Option<PathBuf>,
    /// Truncation depth for nerves.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Uniqueness threshold for horn fillers.
    #[arg(long, default_value_t = 2)]
    pub kan_n: usize,
    /// 2-cell moves allowed per kernel loop.
    #[arg(long, default_value_t = 10_000)]
    pub move_budget: usize,
    /// Run the full boundary-map verification.
    #[arg(long)]
    pub verify_boundary: bool,
    /// A loop in quotient edge labels to lift, e.g. `a b^-1`.
    #[arg(long = "loop", value_name = "WORD")]
    pub loop_word: Option<String>,
    /// Fail unless the bibundle is Morita.
    #[arg(long)]
    pub require_morita: bool,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, opts) = match &cli.command {
        Command::Validate(o) => ("validate", o),
        Command::Strictify(o) => ("strictify", o),
        Command::ExtractXmod(o) => ("extract-xmod", o),
        Command::XmodTo2group(o) => ("xmod-to-2group", o),
        Command::BibundleCheck(o) => ("bibundle-check", o),
        Command::Nerve(o) => ("nerve", o),
        Command::KanCheck(o) => ("kan-check", o),
        Command::Pi1(o) => ("pi1", o),
        Command::Roundtrip(o) => ("roundtrip", o),
    };
    let report = commands::run(name, opts);
    let rendered = match opts.format {
        Format::Json => output::json(&report),
        Format::Text => output::text(&report),
    };
    if let Some(msg) = &report.error {
        eprintln!("twogroup {name}: {msg}");
    }
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("twogroup {name}: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(report.status.exit_code())
}
