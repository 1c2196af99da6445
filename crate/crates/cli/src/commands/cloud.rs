//! Shared pieces of the `bootstrap` and `fatigue` subcommands: option
//! resolution, channel extraction and the cloud scatter SVG.

use std::path::Path;

use serde::Serialize;
use triax_core::bootstrap::{BootstrapConfig, CloudPoint, ResampleMode, RestReference};
use triax_core::moments::squared_magnitude_series;
use triax_core::plot::{cloud_svg, AxisLabels};
use triax_core::Series;

use crate::args::{CloudOpts, ModeArg, ScalarChannelArg};
use crate::common::{resolve, write_file, CliError};
use crate::config::CloudFile;
use crate::meta::Meta;

/// Resolved bootstrap options common to both subcommands.
#[derive(Debug, Serialize)]
pub struct ResolvedCloud {
    pub resamples: usize,
    pub fraction: f64,
    pub mode: ModeArg,
    pub seed: u64,
    pub k: u32,
    pub channel: ScalarChannelArg,
}

pub fn resolve_cloud(opts: &CloudOpts, file: &CloudFile) -> ResolvedCloud {
    ResolvedCloud {
        resamples: resolve(opts.resamples.as_ref(), file.resamples.as_ref(), 1000),
        fraction: resolve(opts.fraction.as_ref(), file.fraction.as_ref(), 0.5),
        mode: resolve(
            opts.mode.as_ref(),
            file.mode.as_ref(),
            ModeArg::WithoutReplacement,
        ),
        seed: resolve(opts.seed.as_ref(), file.seed.as_ref(), 0),
        k: resolve(opts.k.as_ref(), file.k.as_ref(), 3),
        channel: resolve(
            opts.channel.as_ref(),
            file.channel.as_ref(),
            ScalarChannelArg::Mag2,
        ),
    }
}

impl ResolvedCloud {
    pub fn core_config(&self) -> BootstrapConfig {
        BootstrapConfig {
            resamples: self.resamples,
            fraction: self.fraction,
            mode: match self.mode {
                ModeArg::WithoutReplacement => ResampleMode::WithoutReplacement,
                ModeArg::WithReplacement => ResampleMode::WithReplacement,
            },
            seed: self.seed,
        }
    }
}

pub fn channel_name(channel: ScalarChannelArg) -> &'static str {
    match channel {
        ScalarChannelArg::X => "x",
        ScalarChannelArg::Y => "y",
        ScalarChannelArg::Z => "z",
        ScalarChannelArg::Mag2 => "mag2",
        ScalarChannelArg::Mag2Raw => "mag2_raw",
    }
}

/// Scalar values of the selected channel. `mag2` standardizes the axes over
/// the whole recording, which is what makes the rest baseline chi-square.
pub fn extract_channel(
    series: &Series,
    channel: ScalarChannelArg,
) -> Result<Vec<f64>, CliError> {
    use triax_core::ingest::Axis;
    Ok(match channel {
        ScalarChannelArg::X => series.axis_values(Axis::X),
        ScalarChannelArg::Y => series.axis_values(Axis::Y),
        ScalarChannelArg::Z => series.axis_values(Axis::Z),
        ScalarChannelArg::Mag2 => squared_magnitude_series(series, true)?,
        ScalarChannelArg::Mag2Raw => squared_magnitude_series(series, false)?,
    })
}

/// Scatter of cloud points in the skewness-exkurtosis plane with the rest
/// reference marked; written with a metadata sidecar.
pub fn write_cloud_svg(
    path: &Path,
    points: &[CloudPoint],
    reference: &RestReference,
    meta: &Meta,
) -> Result<(), CliError> {
    let pts: Vec<(f64, f64)> = points.iter().map(|p| (p.skewness, p.exkurtosis)).collect();
    let svg = cloud_svg(
        &pts,
        (reference.skewness, reference.exkurtosis),
        &AxisLabels {
            title: "bootstrap moment cloud",
            x: "skewness",
            y: "excess kurtosis",
        },
    )?;
    write_file(path, svg.as_bytes())?;
    meta.write_sidecar(path)
}
