use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "phasecrit",
    version,
    about = "Phase-space signatures of quantum phase transitions in spin chains"
)]
pub struct Cli {
    /// Worker threads for sweeps (default: all cores)
    #[arg(long, env = "PHASECRIT_THREADS", global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an observable over a parameter grid and write CSV
    Sweep(SweepArgs),
    /// Run a detector over a parameter grid and print its verdict
    Detect(DetectArgs),
    /// Run the self-check suites
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Xy,
    Xxz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObservableArg {
    /// DWF at --point (one or two sites)
    Dwf,
    /// GWF at --theta/--phi (one, two or three sites)
    Gwf,
    /// Largest and smallest two-site DWF values
    DwfExtremes,
    /// Extremized two-site GWF with its arg-max and arg-min angles (XXZ)
    GwfExtremes,
    /// DWF negativity and concurrence
    Entanglement,
    /// Spread of the two-site GWF over --distances
    GwfSpread,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetectorArg {
    Divergence,
    Discontinuity,
    Cusp,
    Factorization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Value,
    D1,
}

#[derive(Debug, Clone, Args)]
pub struct ObservableArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,

    /// XY anisotropy
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Chain length for exact diagonalization (XXZ default 16; XY uses the
    /// infinite chain unless given)
    #[arg(long)]
    pub n_sites: Option<usize>,

    #[arg(long, value_enum, default_value = "dwf")]
    pub observable: ObservableArg,

    /// Phase-space point as bit strings x,p, e.g. 00,01
    #[arg(long)]
    pub point: Option<String>,

    /// Polar angles, one per site, e.g. pi/4,pi/4
    #[arg(long)]
    pub theta: Option<String>,

    /// Azimuthal angles, one per site (default all zero)
    #[arg(long)]
    pub phi: Option<String>,

    /// Use the square root of the reduced state
    #[arg(long)]
    pub sqrt: bool,

    /// Distance between the first two sites
    #[arg(long, default_value_t = 1)]
    pub m: usize,

    /// Distance between the second and third sites (default: --m)
    #[arg(long)]
    pub m_jk: Option<usize>,

    /// Distances for gwf-spread
    #[arg(long, default_value = "1,5,20")]
    pub distances: String,

    /// Grid as lo:hi:points
    #[arg(long, allow_hyphen_values = true)]
    pub range: String,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub obs: ObservableArgs,

    /// CSV output path (default: stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also draw the value columns as an SVG plot
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub obs: ObservableArgs,

    #[arg(long, value_enum)]
    pub detector: DetectorArg,

    /// Series inspected by the discontinuity detector
    #[arg(long, value_enum, default_value = "value")]
    pub target: TargetArg,

    /// Column of a multi-column observable (default: the first)
    #[arg(long)]
    pub column: Option<String>,

    /// Dyadic refinement levels
    #[arg(long, default_value_t = 3)]
    pub refine: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Suite to run: sw, dwf, closed, oracle, detectors, appendix (default: all)
    #[arg(long)]
    pub suite: Option<String>,

    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}
