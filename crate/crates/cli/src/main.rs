//! `mscodes`: construct and decode multiset codes, tabulate ball sizes and
//! bounds, run the verification suites.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multiset_codes::Error;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "mscodes", version, about = "Multiset deletion-correcting codes")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add decimal approximations next to exact rationals.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code (one syndrome class) and optionally save it.
    Construct(ConstructArgs),
    /// Decode a received multiset with a saved code.
    Decode(DecodeArgs),
    /// Emit ball, pair, bound or ideal-set tables.
    Tables(TablesArgs),
    /// Run invariant suites; exits 1 on any failure.
    Verify(VerifyArgs),
    /// Send random codewords through the deletion channel and decode them.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Field order s (a prime power).
    #[arg(long)]
    s: u32,
    /// Defining polynomial of F_s over its prime field, `c0,c1,...`.
    #[arg(long)]
    field_modulus: Option<String>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[command(flatten)]
    field: FieldArgs,
    /// Number of deletions to correct.
    #[arg(long)]
    t: u32,
    /// Multiset size.
    #[arg(long)]
    n: u32,
    /// Modulus f as `c0,c1,...,1`; defaults to the smallest irreducible.
    #[arg(long)]
    f: Option<String>,
    /// Syndrome class as a canonical coefficient vector `c0,c1,...`;
    /// defaults to the largest class.
    #[arg(long)]
    syndrome: Option<String>,
    /// Save the code file (JSON) here.
    #[arg(long)]
    code: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Projective,
    Affine,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    /// Code file written by `construct --code`.
    #[arg(long)]
    code: PathBuf,
    /// Received multiset: symbols `0,1,inf` or multiplicities `[1,1,0,0]`.
    #[arg(long, allow_hyphen_values = true)]
    received: String,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Deletions per trial.
    #[arg(long)]
    r: u64,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[command(subcommand)]
    kind: TableKind,
}

#[derive(Subcommand, Debug)]
enum TableKind {
    /// Ball sizes: one row per radius, one column per center.
    Balls {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: usize,
        /// Centers as multiplicity vectors `a,b,c`; defaults to all of them.
        #[arg(long, num_args = 1..)]
        centers: Vec<String>,
        /// Radii, `a..b` inclusive; defaults to `0..n`.
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        with_oracle: bool,
    },
    /// Pair enumerator A_{n,q}(m).
    Pairs {
        #[arg(long)]
        n: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        with_oracle: bool,
    },
    /// Sphere-packing, anticode and GV bounds.
    Bounds {
        #[arg(long)]
        n: String,
        #[arg(long)]
        q: String,
        /// Packing radius; the row is for minimum distance 2t+1.
        #[arg(long, conflicts_with = "d")]
        t: Option<String>,
        /// Minimum distance; packing radius (d-1)/2.
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        with_oracle: bool,
    },
    /// Ideal difference set sizes |S_{q-1}(r+, r-)|.
    Ideal {
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: String,
        /// Negative-part radius; defaults to the positive one.
        #[arg(long)]
        r_minus: Option<String>,
        #[arg(long)]
        with_oracle: bool,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 8)]
    max_n: u32,
    #[arg(long, default_value_t = 4)]
    max_q: usize,
    /// Bounds suite: only the exact-search sandwich and the worked example.
    #[arg(long)]
    tiny: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Geometry,
    Codes,
    Bounds,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input: exit 2.
    Usage(String),
    /// An invariant or decoding check failed: exit 1.
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Uncorrectable(_) | Error::Inconsistent(_) | Error::ConstructionUnsound(_) => {
                CliError::Failed(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// What a command produced, and whether its checks passed.
pub struct Outcome {
    output: output::Output,
    passed: bool,
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let outcome = match &cli.command {
        Command::Construct(a) => commands::construct(cli, a)?,
        Command::Decode(a) => commands::decode(a)?,
        Command::Tables(a) => commands::tables(cli, a)?,
        Command::Verify(a) => commands::verify(a)?,
        Command::Simulate(a) => commands::simulate(cli, a)?,
    };
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            outcome.output.render(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            match outcome.output.render(cli.format, &mut w) {
                // reader went away (`| head`); not our failure
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
