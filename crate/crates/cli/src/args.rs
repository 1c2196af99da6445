//! Command-line argument definitions.
//!
//! Every option that participates in config-file resolution is declared
//! `Option` here; defaults live in the subcommand implementations so the
//! precedence chain (defaults < config file < flags) stays in one place.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "triax",
    version,
    about = "Moment, bootstrap, cluster and spectral analysis of 3-axis accelerometer recordings",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// JSON config file with per-subcommand option sections; flags override it
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded synthetic recording and write it as CSV
    Simulate(SimulateArgs),
    /// Tabulate per-window moments of each axis and the squared magnitude
    Moments(MomentsArgs),
    /// Bootstrap a scalar channel into a moment cloud (full point list)
    Bootstrap(BootstrapArgs),
    /// Summarize a recording's distance from the rest reference
    Fatigue(FatigueArgs),
    /// Group windows into activity tiers by k-means over moment features
    Cluster(ClusterArgs),
    /// Short-time spectra of one channel plus a low-frequency tremor index
    Spectrogram(SpectrogramArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Generator regime
    #[arg(long, value_enum)]
    pub state: Option<StateArg>,
    /// Recording length, e.g. 90s, 10m or a plain millisecond count
    #[arg(long, value_name = "DURATION")]
    pub duration: Option<String>,
    /// Sampling rate in Hz (at most 1000)
    #[arg(long, value_name = "HZ")]
    pub rate: Option<f64>,
    /// RNG seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV file; standard output when omitted
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    /// Input recording (CSV or JSONL)
    pub input: PathBuf,
    /// Input format; inferred from the file extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Window length, e.g. 60s
    #[arg(long, value_name = "DURATION")]
    pub window: Option<String>,
    /// Minimum samples a window needs to be kept
    #[arg(long, value_name = "N")]
    pub min_samples: Option<usize>,
    /// Compute mag2 from raw axes instead of per-window standardized axes
    #[arg(long)]
    pub raw_mag2: bool,
    /// Report plain kurtosis (normal = 3) instead of excess kurtosis
    #[arg(long)]
    pub plain_kurtosis: bool,
    /// Output CSV file; standard output when omitted
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BootstrapArgs {
    /// Input recording (CSV or JSONL)
    pub input: PathBuf,
    /// Input format; inferred from the file extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[command(flatten)]
    pub cloud: CloudOpts,
    /// Output JSON report; standard output when omitted
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Also write an SVG scatter of the cloud with the reference marked
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FatigueArgs {
    /// Input recording (CSV or JSONL)
    pub input: PathBuf,
    /// Input format; inferred from the file extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[command(flatten)]
    pub cloud: CloudOpts,
    /// Measured rest recording; its cloud centroid replaces the analytic
    /// chi-square reference point
    #[arg(long, value_name = "FILE")]
    pub baseline: Option<PathBuf>,
    /// Output JSON report; standard output when omitted
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Also write an SVG scatter of the cloud with the reference marked
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
}

/// Bootstrap options shared by the `bootstrap` and `fatigue` subcommands.
#[derive(Debug, Args)]
pub struct CloudOpts {
    /// Number of resamples
    #[arg(long, value_name = "N")]
    pub resamples: Option<usize>,
    /// Subsample fraction in (0, 1]; size = ceil(fraction * n)
    #[arg(long)]
    pub fraction: Option<f64>,
    /// Resampling mode
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// RNG seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Degrees of freedom of the chi-square rest reference
    #[arg(long)]
    pub k: Option<u32>,
    /// Scalar channel to analyze
    #[arg(long, value_enum)]
    pub channel: Option<ScalarChannelArg>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Input recordings (CSV or JSONL), one or more
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Input format for every input; inferred per file when omitted
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Window length, e.g. 60s
    #[arg(long, value_name = "DURATION")]
    pub window: Option<String>,
    /// Minimum samples a window needs to be kept
    #[arg(long, value_name = "N")]
    pub min_samples: Option<usize>,
    /// Number of clusters
    #[arg(long)]
    pub k: Option<usize>,
    /// RNG seed (initialization tie-breaks)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Iteration cap
    #[arg(long, value_name = "N")]
    pub max_iter: Option<usize>,
    /// Convergence tolerance on centroid displacement
    #[arg(long)]
    pub tol: Option<f64>,
    /// Comma-separated moment features, e.g. std,skewness,exkurtosis
    #[arg(long, value_name = "LIST")]
    pub features: Option<String>,
    /// Output CSV of window assignments (required here or in the config)
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// JSON model dump; defaults to <output>.model.json
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
    /// Write feature scatter SVGs <PREFIX>_std_mean.svg and
    /// <PREFIX>_skew_exkurt.svg, points colored by cluster
    #[arg(long, value_name = "PREFIX")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrogramArgs {
    /// Input recording (CSV or JSONL)
    pub input: PathBuf,
    /// Input format; inferred from the file extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Segment length, e.g. 10s
    #[arg(long, value_name = "DURATION")]
    pub segment: Option<String>,
    /// Segment overlap fraction in [0, 1)
    #[arg(long)]
    pub overlap: Option<f64>,
    /// Taper applied to each segment
    #[arg(long, value_enum)]
    pub window_fn: Option<WindowFnArg>,
    /// Scalar channel to analyze
    #[arg(long, value_enum)]
    pub channel: Option<SpectralChannelArg>,
    /// Tremor band as LO:HI in Hz, e.g. 0.5:4
    #[arg(long, value_name = "LO:HI")]
    pub band: Option<String>,
    /// Output CSV matrix (required here or in the config); first row holds
    /// bin frequencies, first column frame start times
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// JSON tremor-index series; defaults to <output>.tremor.json
    #[arg(long, value_name = "FILE")]
    pub tremor: Option<PathBuf>,
    /// Also write an SVG heatmap of the spectrogram
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateArg {
    Rest,
    Fatigue,
    Active,
    Moderate,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormatArg {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    WithoutReplacement,
    WithReplacement,
}

/// Channel selector for the moment/bootstrap pipeline. `mag2` is the
/// squared magnitude of per-recording standardized axes (the chi-square
/// baseline channel); `mag2-raw` skips the standardization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarChannelArg {
    X,
    Y,
    Z,
    Mag2,
    Mag2Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralChannelArg {
    X,
    Y,
    Z,
    Magnitude,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowFnArg {
    Rectangular,
    Hann,
}
