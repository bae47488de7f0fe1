use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltaprime::DecouplingTag;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "deltaprime", version, about = "Two-point delta / delta-prime interactions in one dimension")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose the two interactions of a config into one.
    Compose(ComposeArgs),
    /// Sweep transmission and reflection amplitudes over k.
    Scatter(ScatterArgs),
    /// Bound states, antibound states and resonances.
    Spectrum(SpectrumArgs),
    /// Levels or poles of a configuration with decoupled interactions.
    SpectrumDecoupled(DecoupledArgs),
    /// Trace of the matching matrix as a function of the delta-prime strength.
    TraceCurve(TraceArgs),
    /// Residual grids of the reduced spectral equations.
    LambertMap(LambertArgs),
    /// Heat trace of the first interaction of a config.
    Heat(HeatArgs),
    /// Scattering wave function on a grid of positions.
    Wave(WaveArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Record the wall-clock time in JSON output.
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Clone, Debug, Args)]
pub struct ConfigArg {
    /// JSON system description.
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneArg {
    Z,
    K,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct WindowArgs {
    /// Coordinates of the search window.
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane: Option<PlaneArg>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub re_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub re_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im_max: Option<f64>,
    /// Seeds per axis.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dedup: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin: Option<f64>,
}

#[derive(Clone, Debug, Args)]
pub struct ComposeArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct ScatterArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub config: ConfigArg,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
    #[arg(long)]
    pub k_min: f64,
    #[arg(long)]
    pub k_max: f64,
    #[arg(long, default_value_t = 200)]
    pub k_steps: usize,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub config: ConfigArg,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct DecoupledArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub config: ConfigArg,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
    /// PP, PM, MP, MM, PReg, MReg, RegP or RegM.
    #[arg(long)]
    #[serde(serialize_with = "tag_name")]
    pub case: DecouplingTag,
    /// Largest real level reported for double decoupling.
    #[arg(long, default_value_t = 50.0)]
    pub bound: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
}

fn tag_name<S: serde::Serializer>(tag: &DecouplingTag, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(tag.as_str())
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct TraceArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    pub v1_min: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    pub v1_max: f64,
    #[arg(long, default_value_t = 401)]
    pub steps: usize,
    /// Points with `|1 - |v1|| < band` are flagged as divergent.
    #[arg(long, default_value_t = 1e-2)]
    pub band: f64,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct LambertArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub config: ConfigArg,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = -30.0, allow_hyphen_values = true)]
    pub re_min: f64,
    #[arg(long, default_value_t = 30.0, allow_hyphen_values = true)]
    pub re_max: f64,
    #[arg(long, default_value_t = -12.0, allow_hyphen_values = true)]
    pub im_min: f64,
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    pub im_max: f64,
    /// Grid points per axis.
    #[arg(long, default_value_t = 121)]
    pub resolution: usize,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct HeatArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub config: ConfigArg,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub t_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IncidenceArg {
    Left,
    Right,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct WaveArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub config: ConfigArg,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
    #[arg(long)]
    pub k: f64,
    #[arg(long, value_enum, default_value = "left")]
    pub incidence: IncidenceArg,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_max: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub steps: usize,
}
