//! `triax moments`: per-window moment table of each axis and the squared
//! magnitude.
//!
//! One CSV row per window and channel, channels in the order x, y, z,
//! mag2. The mag2 channel standardizes the axes within each window by
//! default, putting rest windows on the chi-square(3) scale; `--raw-mag2`
//! keeps the recorded values, which preserves the movement-intensity
//! scale.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use triax_core::ingest::{segment_windows, Sample, Window};
use triax_core::moments::{moment_vector, standardize};
use triax_core::{Error, MomentVector};

use crate::args::{FormatArg, MomentsArgs};
use crate::common::{load_series, parse_duration_ms, resolve, CliError, Sink};
use crate::config::MomentsFile;
use crate::meta::Meta;

#[derive(Debug, Serialize)]
struct Resolved {
    input: PathBuf,
    format: Option<FormatArg>,
    window_ms: i64,
    min_samples: usize,
    raw_mag2: bool,
    plain_kurtosis: bool,
    output: Option<PathBuf>,
}

pub fn run(args: &MomentsArgs, file: &MomentsFile) -> Result<(), CliError> {
    let window = resolve(args.window.as_ref(), file.window.as_ref(), "60s".into());
    let resolved = Resolved {
        input: args.input.clone(),
        format: args.format.or(file.format),
        window_ms: parse_duration_ms(&window)?,
        min_samples: resolve(args.min_samples.as_ref(), file.min_samples.as_ref(), 4),
        raw_mag2: args.raw_mag2 || file.raw_mag2.unwrap_or(false),
        plain_kurtosis: args.plain_kurtosis || file.plain_kurtosis.unwrap_or(false),
        output: args.output.clone().or_else(|| file.output.clone()),
    };

    let input = load_series(&resolved.input, resolved.format)?;
    let meta = Meta::new("moments", &resolved, &[&input])?;

    let seg = segment_windows(&input.series, resolved.window_ms, resolved.min_samples.max(4))?;
    if seg.skipped > 0 {
        eprintln!(
            "triax moments: dropped {} window(s) (incomplete or below min samples)",
            seg.skipped
        );
    }

    let kurt_name = if resolved.plain_kurtosis {
        "kurtosis"
    } else {
        "exkurtosis"
    };
    let kurt_shift = if resolved.plain_kurtosis { 3.0 } else { 0.0 };
    let mut csv = format!("window_start_ms,window_end_ms,channel,mean,std,skewness,{kurt_name}\n");
    for w in &seg.windows {
        for (channel, mv) in window_moments(w, resolved.raw_mag2)? {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{}",
                w.start_ms,
                w.end_ms,
                channel,
                mv.mean,
                mv.std,
                mv.skewness,
                mv.exkurtosis + kurt_shift
            );
        }
    }

    let sink = Sink::new(resolved.output.as_deref());
    sink.write(csv.as_bytes())?;
    if let Some(path) = sink.path() {
        meta.write_sidecar(path)?;
    }
    Ok(())
}

/// Moment vectors of the four channels of one window, with the window start
/// attached to any degenerate-distribution diagnostic.
fn window_moments(
    w: &Window,
    raw_mag2: bool,
) -> Result<[(&'static str, MomentVector); 4], CliError> {
    let pick = |f: fn(&Sample) -> f64| -> Vec<f64> { w.samples.iter().map(f).collect() };
    let located = |e: Error, channel: &str| -> CliError {
        match e {
            Error::DegenerateDistribution { .. } => Error::DegenerateDistribution {
                context: format!("channel {channel} of window starting at {} ms", w.start_ms),
            }
            .into(),
            other => other.into(),
        }
    };

    let ax = pick(|s| s.ax);
    let ay = pick(|s| s.ay);
    let az = pick(|s| s.az);
    let mag2: Vec<f64> = if raw_mag2 {
        (0..w.samples.len())
            .map(|i| ax[i] * ax[i] + ay[i] * ay[i] + az[i] * az[i])
            .collect()
    } else {
        let ux = standardize(&ax).map_err(|e| located(e, "mag2 (ax)"))?;
        let uy = standardize(&ay).map_err(|e| located(e, "mag2 (ay)"))?;
        let uz = standardize(&az).map_err(|e| located(e, "mag2 (az)"))?;
        (0..w.samples.len())
            .map(|i| ux[i] * ux[i] + uy[i] * uy[i] + uz[i] * uz[i])
            .collect()
    };

    Ok([
        ("x", moment_vector(&ax).map_err(|e| located(e, "x"))?),
        ("y", moment_vector(&ay).map_err(|e| located(e, "y"))?),
        ("z", moment_vector(&az).map_err(|e| located(e, "z"))?),
        ("mag2", moment_vector(&mag2).map_err(|e| located(e, "mag2"))?),
    ])
}
