use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pharmonic::landau::DEFAULT_TOLERANCE;
use pharmonic::Theorem;

#[derive(Debug, Parser)]
#[command(
    name = "pharm",
    version,
    about = "Landau radii, Bloch bounds and geometric checks for p-harmonic maps"
)]
#[command(args_override_self = true)]
pub struct Cli {
    /// Output format; `bloch` and `check` default to json, everything else to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// File of `key=value` lines, read as if given as `--key=value` flags.
    /// Flags on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print M0, M1, s0 and r0.
    Constants,
    /// Solve one Landau radius.
    Landau(LandauArgs),
    /// Solve a grid of Landau radii.
    LandauTable(TableArgs),
    /// Bloch seminorm upper bound 2M·φ_p(y*).
    Bloch(BlochArgs),
    /// Check a map file for sense preservation, starlikeness or convexity.
    Check(CheckArgs),
    /// Sample the region of variability V_p(z0).
    Variability(VariabilityArgs),
}

#[derive(Debug, Args)]
pub struct PrecisionArg {
    /// Significant digits in CSV output.
    #[arg(long, env = "PHARM_PRECISION", default_value_t = 6)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct LandauArgs {
    #[arg(long, value_parser = parse_theorem)]
    pub theorem: Theorem,
    #[arg(long = "M", allow_hyphen_values = true)]
    pub m: f64,
    #[arg(long)]
    pub p: u32,
    /// Bisection interval width.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[command(flatten)]
    pub precision: PrecisionArg,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_theorem)]
    pub theorem: Theorem,
    /// Comma-separated M values [default: 1.1296,2,2.2976,3]
    #[arg(long = "Ms", value_delimiter = ',')]
    pub ms: Vec<f64>,
    /// Comma-separated p values [default: 2,3,4 for 41, 2,3 for 42]
    #[arg(long = "ps", value_delimiter = ',')]
    pub ps: Vec<u32>,
    #[command(flatten)]
    pub precision: PrecisionArg,
}

#[derive(Debug, Args)]
pub struct BlochArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long = "M", default_value_t = 1.0, allow_hyphen_values = true)]
    pub m: f64,
    /// Write (y, φ_p(y)) samples as CSV.
    #[arg(long, value_name = "PATH")]
    pub emit_curve: Option<PathBuf>,
    /// Number of curve samples on [0, 1].
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    Sense,
    Starlike,
    Convex,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub map_file: PathBuf,
    #[arg(long, value_enum)]
    pub predicate: Predicate,
    #[arg(long, default_value_t = 64)]
    pub rings: usize,
    #[arg(long, default_value_t = 256)]
    pub angles: usize,
    #[arg(long, default_value_t = 0.99)]
    pub r_max: f64,
}

#[derive(Debug, Args)]
pub struct VariabilityArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub z0_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub z0_im: f64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e: pharmonic::Error| e.to_string())
}
