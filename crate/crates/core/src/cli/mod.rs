//! Command-line front end. Exit codes: 0 success, 1 sampler or runtime
//! failure, 2 usage, configuration or input error.

mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::ReportFormat;
use crate::error::Error;

pub use commands::{subset_from_reader, SubsetRequest};
pub use config::{build_domain, build_method, RunConfigFile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidDomain(_)
            | Error::DegenerateDimension { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidArgument(_)
            | Error::PointOutsideDomain { .. }
            | Error::NonFinite { .. }
            | Error::MissingDensity
            | Error::MissingViability
            | Error::DuplicatePoints { .. }
            | Error::OutOfUnitCube { .. }
            | Error::DisjointDomain
            | Error::SourceTooShort { .. }
            | Error::Parse { .. } => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spacefill", version, about = "Deterministic space-filling sampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a sample set.
    Generate(GenerateArgs),
    /// Quality metrics of a sample set in the unit cube, as JSON.
    Score(ScoreArgs),
    /// Give a sample set the Latin property.
    Latinize(LatinizeArgs),
    /// One-pass representative subset of a large CSV file.
    Subset(SubsetArgs),
    /// Move a sample set to a new box, adding points to any new region.
    Expand(ExpandArgs),
    /// Add points near a set of anchor points.
    AppendRegion(AppendRegionArgs),
    /// Run benchmark experiments and write reports.
    Bench(BenchArgs),
    /// SVG scatter plot of two dimensions.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
struct SeedArg {
    /// Random seed; falls back to SPACEFILL_SEED.
    #[arg(long, env = "SPACEFILL_SEED")]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// Lower corner of the domain box, comma separated (default all 0).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lower: Option<Vec<f64>>,
    /// Upper corner of the domain box (default all 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    upper: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    seed: SeedArg,
    /// Algorithm parameters as key=value; values are read as JSON.
    #[arg(long, num_args = 1..)]
    params: Vec<String>,
    #[arg(long)]
    latinize: bool,
    /// Built-in density: gauss-center.
    #[arg(long)]
    density: Option<String>,
    /// Built-in viability: parabola-above, parabola-below.
    #[arg(long)]
    viability: Option<String>,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// JSON run configuration; flags given alongside override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Input CSV (default stdin).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = crate::metrics::DEFAULT_P)]
    p: u32,
}

#[derive(Debug, Args)]
struct LatinizeArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    bounds: BoundsArgs,
}

#[derive(Debug, Args)]
struct SubsetArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    /// Records per segment.
    #[arg(long)]
    segment: usize,
    /// Total record count, if known. Without it progress comes from the file size.
    #[arg(long)]
    total: Option<usize>,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    bounds: BoundsArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[command(flatten)]
    bounds: BoundsArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    new_lower: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    new_upper: Vec<f64>,
    /// Points to add when the box grows.
    #[arg(long, default_value_t = 0)]
    add: usize,
    #[arg(long, default_value = "greedy-fp")]
    algo: String,
    #[arg(long, num_args = 1..)]
    params: Vec<String>,
    /// Draw candidates from the whole new box instead of only the added region.
    #[arg(long)]
    whole_domain: bool,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AppendRegionArgs {
    #[arg(long)]
    anchors: PathBuf,
    #[arg(long)]
    n: usize,
    /// Box half-width as a fraction of each anchor coordinate.
    #[arg(long, default_value_t = 0.03)]
    halfwidth: f64,
    #[arg(long, default_value_t = 50)]
    cands_per_anchor: usize,
    /// Also keep new points away from the anchors.
    #[arg(long)]
    include_anchors: bool,
    #[command(flatten)]
    bounds: BoundsArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => ReportFormat::Table,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, conflicts_with = "spec", required_unless_present = "spec")]
    suite: Option<Suite>,
    /// JSON experiment spec, or an array of them.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Directory for the report files.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "table")]
    format: Vec<FormatArg>,
    #[arg(long)]
    reps_override: Option<usize>,
    #[arg(long)]
    seed_base: Option<u64>,
    /// Leave timings out so reports are reproducible.
    #[arg(long)]
    no_timing: bool,
    /// Also write every generated set as CSV under `<out>/<experiment>/`.
    #[arg(long)]
    save_sets: bool,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Horizontal and vertical dimension, e.g. `0,3`.
    #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1])]
    dims: Vec<usize>,
    /// Index of the first point drawn in the second color.
    #[arg(long)]
    split: Option<usize>,
    #[command(flatten)]
    bounds: BoundsArgs,
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code. Errors are printed to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Score(a) => commands::score(a),
        Command::Latinize(a) => commands::latinize(a),
        Command::Subset(a) => commands::subset(a),
        Command::Expand(a) => commands::expand(a),
        Command::AppendRegion(a) => commands::append_region(a),
        Command::Bench(a) => commands::bench(a),
        Command::Plot(a) => commands::plot(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("spacefill: {}", e.message);
            e.code
        }
    }
}
