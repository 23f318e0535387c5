use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;

use config::FileConfig;

#[derive(Parser, Debug)]
#[command(name = "tiltwalk", version, about = "Growth of tensor powers for quantum sl2 tilting modules")]
struct Cli {
    /// TOML file with defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Walk-count tables and their row sums.
    Walk(WalkArgs),
    /// Generating-function coefficients as exact rationals.
    Series(SeriesArgs),
    /// Exact sequences against their asymptotic approximants.
    Asympt(AsymptArgs),
    /// Tensor powers of a tilting module.
    Tilt(TiltArgs),
    /// Root-system constants and the growth envelope.
    Bounds(BoundsArgs),
    /// Run the built-in checks.
    Verify(VerifyArgs),
    /// `n, b_n / a_approx(n), limit` for plotting.
    Plotdata(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WalkArgs {
    #[command(flatten)]
    common: Common,
    /// Unconstrained walks instead of the mod-ell table.
    #[arg(long)]
    classical: bool,
    /// Only the row sums.
    #[arg(long)]
    sums_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// `sum b_n x^n` from its rational form (ell >= 3).
    B,
    /// `sum a(n, 0) x^n`.
    HalfLine,
    /// `sum w_n x^n`.
    Wall,
    /// The mixed-case factor in `w`.
    Mixed,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "b")]
    kind: SeriesKind,
    /// Characteristic for `--kind mixed`.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args, Debug)]
pub struct AsymptArgs {
    #[command(flatten)]
    common: Common,
    /// Lower end of the error window.
    #[arg(long)]
    from: Option<usize>,
    /// Also compare the spectral integral with exact a_n up to this n.
    #[arg(long)]
    quadrature: Option<usize>,
    /// Decimal digits for the quadrature; TILTWALK_PRECISION also works.
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Args, Debug)]
pub struct TiltArgs {
    #[command(flatten)]
    common: Common,
    /// Highest weight of the tensored module T(k).
    #[arg(long)]
    k: Option<u64>,
    /// Emit the decomposition of the last power instead of counts.
    #[arg(long)]
    show_decomp: bool,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Cartan type such as A1, B2, G2, E8.
    #[arg(long = "type")]
    root_type: String,
    #[arg(long)]
    ell: Option<u64>,
    /// dim T of the module whose powers are bounded.
    #[arg(long)]
    dim: u64,
    /// Characteristic-zero leading constant; defaults to the A1 value for
    /// type A1 and to 1 otherwise.
    #[arg(long)]
    constant: Option<f64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = ["quick", "full"])]
    profile: Option<String>,
    /// Read the fixtures from this directory instead of the built-in copies.
    #[arg(long)]
    golden_dir: Option<PathBuf>,
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[command(flatten)]
    common: Common,
}

/// Distinguishes bad invocations (exit 2) from failures while running
/// (exit 1).
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<tiltwalk_core::Error> for Failure {
    fn from(e: tiltwalk_core::Error) -> Self {
        use tiltwalk_core::Error as E;
        match e {
            E::ModulusTooSmall { .. }
            | E::ResidueOutOfRange { .. }
            | E::InvalidArgument(_)
            | E::EmptyWindow { .. }
            | E::InvalidRootSystem(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.into()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match cli.config.as_deref().map(FileConfig::load).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Walk(a) => commands::walk(a, &file),
        Command::Series(a) => commands::series(a, &file),
        Command::Asympt(a) => commands::asympt(a, &file),
        Command::Tilt(a) => commands::tilt(a, &file),
        Command::Bounds(a) => commands::bounds(a, &file),
        Command::Verify(a) => commands::verify(a, &file),
        Command::Plotdata(a) => commands::plotdata(a, &file),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run with --help for usage");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(1),
    }
}
