//! Command line front end for the schober library: load objects from JSON
//! files, run validations and constructions, emit reports and DOT graphs.
//!
//! Exit codes: 0 when every requested check passes, 1 when a mathematical
//! check fails, 2 on parse, IO, or usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

mod run;

use run::Failure;

#[derive(Parser)]
#[command(name = "schober", version, about = "Exact K-theoretic schober calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an object and report which checks fail.
    Validate(ValidateArgs),
    /// Apply a braid word to a disk presentation.
    BraidAct(BraidActArgs),
    /// Monodromies of a disk presentation, or transport along a word.
    Monodromy(MonodromyArgs),
    /// Window data of a wall crossing at its offset.
    BuildWindows(CrossingArgs),
    /// Spherical pair of a wall crossing.
    BuildPair(CrossingArgs),
    /// Two-basepoint wall-complement system of a flop.
    BuildSkms(BuildSkmsArgs),
    /// Run a relation suite.
    Verify(VerifyArgs),
    /// Pull the flop system back along the cyclic cover and check refinement.
    Pullback(PullbackArgs),
    /// Export a presentation or local system as Graphviz DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Emit the machine-readable JSON report.
    #[arg(long)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("object").required(true)))]
struct ValidateArgs {
    /// Lattice local system JSON.
    #[arg(long, value_name = "PATH", group = "object")]
    local_system: Option<PathBuf>,
    /// Disk presentation JSON.
    #[arg(long, value_name = "PATH", group = "object")]
    disk: Option<PathBuf>,
    /// Spherical pair JSON.
    #[arg(long, value_name = "PATH", group = "object")]
    pair: Option<PathBuf>,
    /// Surface schober JSON.
    #[arg(long, value_name = "PATH", group = "object")]
    surface: Option<PathBuf>,
    /// One-point quiver data JSON.
    #[arg(long, value_name = "PATH", group = "object")]
    quiver: Option<PathBuf>,
    /// Wall crossing JSON {"a": [..], "b": [..], "w": n}.
    #[arg(long, value_name = "PATH", group = "object")]
    crossing: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BraidActArgs {
    /// Disk presentation JSON.
    #[arg(long, value_name = "PATH")]
    data: PathBuf,
    /// Braid word as signed generator indices, e.g. "1 2 -1".
    #[arg(long, value_name = "WORD")]
    word: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true)))]
struct MonodromyArgs {
    /// Disk presentation JSON: report every point monodromy and the total.
    #[arg(long, value_name = "PATH", group = "source")]
    data: Option<PathBuf>,
    /// Local system JSON: transport along --word.
    #[arg(long, value_name = "PATH", group = "source", requires = "word")]
    local_system: Option<PathBuf>,
    /// Path word such as "a b^-1".
    #[arg(long, value_name = "WORD")]
    word: Option<String>,
    /// Read the word as a loop at this basepoint (allows the empty word).
    #[arg(long, value_name = "NAME", requires = "local_system")]
    basepoint: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CrossingArgs {
    /// Weight system, e.g. "a=1,2,b=3".
    #[arg(long, value_name = "WEIGHTS")]
    weights: String,
    /// Window offset.
    #[arg(long = "w", value_name = "OFFSET", default_value_t = 0, allow_hyphen_values = true)]
    w: i64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BuildSkmsArgs {
    /// Flop size.
    #[arg(long, value_name = "N", default_value_t = 1)]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("suite").required(true)))]
struct VerifyArgs {
    /// Flop relation suite, e.g. "n=1".
    #[arg(long, value_name = "SIZE", group = "suite")]
    flop: Option<String>,
    /// Pairing vanishing for every flop size up to N.
    #[arg(long, value_name = "N", group = "suite")]
    euler: Option<u32>,
    /// Compare the two twist computations of a wall crossing.
    #[arg(long, group = "suite", requires = "weights")]
    twist: bool,
    /// Weight system "a=..,b=.." (with --twist).
    #[arg(long, value_name = "WEIGHTS")]
    weights: Option<String>,
    /// Window offset (with --twist).
    #[arg(long = "w", value_name = "OFFSET", default_value_t = 0, allow_hyphen_values = true)]
    w: i64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PullbackArgs {
    /// Flop size.
    #[arg(long, value_name = "N", default_value_t = 1)]
    n: usize,
    /// Truncation radius of the cyclic cover.
    #[arg(long, value_name = "RADIUS")]
    window: i64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("graph").required(true)))]
struct ExportDotArgs {
    /// Local system JSON: nodes carry dimensions, edges carry matrices.
    #[arg(long, value_name = "PATH", group = "graph")]
    local_system: Option<PathBuf>,
    /// Bare groupoid presentation JSON.
    #[arg(long, value_name = "PATH", group = "graph")]
    presentation: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::dispatch(cli.command) {
        Ok(rendered) => {
            if let Err(msg) = rendered.emit() {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            if rendered.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
