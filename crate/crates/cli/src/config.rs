//! Optional JSON config file with one section per subcommand.
//!
//! The file holds per-subcommand option sections; every value uses exactly
//! the syntax of the corresponding flag (durations as `"60s"`, bands as
//! `"0.5:4"`, feature lists as `"std,skewness"`). Unknown sections or keys
//! are configuration errors, not silent no-ops. Example:
//!
//! ```json
//! {
//!   "fatigue": { "resamples": 2000, "seed": 7 },
//!   "spectrogram": { "segment": "13s", "band": "0.5:4" }
//! }
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::{
    FormatArg, ModeArg, ScalarChannelArg, SpectralChannelArg, StateArg, WindowFnArg,
};
use crate::common::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub simulate: SimulateFile,
    #[serde(default)]
    pub moments: MomentsFile,
    #[serde(default)]
    pub bootstrap: CloudFile,
    #[serde(default)]
    pub fatigue: CloudFile,
    #[serde(default)]
    pub cluster: ClusterFile,
    #[serde(default)]
    pub spectrogram: SpectrogramFile,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateFile {
    pub state: Option<StateArg>,
    pub duration: Option<String>,
    pub rate: Option<f64>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsFile {
    pub format: Option<FormatArg>,
    pub window: Option<String>,
    pub min_samples: Option<usize>,
    pub raw_mag2: Option<bool>,
    pub plain_kurtosis: Option<bool>,
    pub output: Option<PathBuf>,
}

/// Section shared by `bootstrap` and `fatigue`; the baseline key only
/// applies to `fatigue`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CloudFile {
    pub format: Option<FormatArg>,
    pub resamples: Option<usize>,
    pub fraction: Option<f64>,
    pub mode: Option<ModeArg>,
    pub seed: Option<u64>,
    pub k: Option<u32>,
    pub channel: Option<ScalarChannelArg>,
    pub baseline: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClusterFile {
    pub format: Option<FormatArg>,
    pub window: Option<String>,
    pub min_samples: Option<usize>,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    pub max_iter: Option<usize>,
    pub tol: Option<f64>,
    pub features: Option<String>,
    pub output: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrogramFile {
    pub format: Option<FormatArg>,
    pub segment: Option<String>,
    pub overlap: Option<f64>,
    pub window_fn: Option<WindowFnArg>,
    pub channel: Option<SpectralChannelArg>,
    pub band: Option<String>,
    pub output: Option<PathBuf>,
    pub tremor: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// Load the config file, or the all-defaults value when no path is given.
pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let bytes = fs::read(path).map_err(|e| {
        CliError::Config(format!("cannot read config file {}: {e}", path.display()))
    })?;
    serde_json::from_slice(&bytes).map_err(|e| {
        CliError::Config(format!("invalid config file {}: {e}", path.display()))
    })
}
