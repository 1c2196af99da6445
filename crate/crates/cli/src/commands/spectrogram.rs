//! `triax spectrogram`: short-time power spectra of one scalar channel.
//!
//! Three outputs: a CSV matrix (header row carries the bin frequencies in
//! Hz, the first column carries frame start times in ms), a JSON series of
//! per-frame band power over the tremor band, and optionally an SVG
//! heatmap on a log color scale from blue (lowest) to red (highest).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use triax_core::plot::{heatmap_svg, AxisLabels};
use triax_core::spectral::{spectrogram, tremor_index, Channel, Spectrogram, TremorIndex, WindowFn};

use crate::args::{FormatArg, SpectralChannelArg, SpectrogramArgs, WindowFnArg};
use crate::common::{
    load_series, parse_band, parse_duration_ms, resolve, write_file, CliError, Sink,
};
use crate::config::SpectrogramFile;
use crate::jsonfmt;
use crate::meta::Meta;

#[derive(Debug, Serialize)]
struct Resolved {
    input: PathBuf,
    format: Option<FormatArg>,
    segment_ms: i64,
    overlap: f64,
    window_fn: WindowFnArg,
    channel: SpectralChannelArg,
    band_lo_hz: f64,
    band_hi_hz: f64,
    output: PathBuf,
    tremor: PathBuf,
    svg: Option<PathBuf>,
}

#[derive(Serialize)]
struct TremorReport<'a> {
    channel: &'a str,
    segment_ms: i64,
    overlap: f64,
    fs_hz: f64,
    tremor: &'a TremorIndex,
    meta: &'a Meta,
}

pub fn run(args: &SpectrogramArgs, file: &SpectrogramFile) -> Result<(), CliError> {
    let segment = resolve(args.segment.as_ref(), file.segment.as_ref(), "10s".into());
    let band = resolve(args.band.as_ref(), file.band.as_ref(), "0.5:4".into());
    let (band_lo_hz, band_hi_hz) = parse_band(&band)?;
    let output = args
        .output
        .clone()
        .or_else(|| file.output.clone())
        .ok_or_else(|| {
            CliError::Config("spectrogram needs an output path (-o or config file)".into())
        })?;
    let tremor_path = args
        .tremor
        .clone()
        .or_else(|| file.tremor.clone())
        .unwrap_or_else(|| sibling(&output, ".tremor.json"));
    let resolved = Resolved {
        input: args.input.clone(),
        format: args.format.or(file.format),
        segment_ms: parse_duration_ms(&segment)?,
        overlap: resolve(args.overlap.as_ref(), file.overlap.as_ref(), 0.5),
        window_fn: resolve(
            args.window_fn.as_ref(),
            file.window_fn.as_ref(),
            WindowFnArg::Hann,
        ),
        channel: resolve(
            args.channel.as_ref(),
            file.channel.as_ref(),
            SpectralChannelArg::Magnitude,
        ),
        band_lo_hz,
        band_hi_hz,
        output,
        tremor: tremor_path,
        svg: args.svg.clone().or_else(|| file.svg.clone()),
    };

    let input = load_series(&resolved.input, resolved.format)?;
    let meta = Meta::new("spectrogram", &resolved, &[&input])?;

    let channel = core_channel(resolved.channel);
    let spec = spectrogram(
        &input.series,
        channel,
        resolved.segment_ms,
        resolved.overlap,
        core_window(resolved.window_fn),
    )?;
    let tremor = tremor_index(&spec, resolved.band_lo_hz, resolved.band_hi_hz)?;

    Sink::new(Some(&resolved.output)).write(matrix_csv(&spec).as_bytes())?;
    meta.write_sidecar(&resolved.output)?;

    let report = TremorReport {
        channel: channel.name(),
        segment_ms: spec.segment_ms,
        overlap: spec.overlap,
        fs_hz: spec.fs,
        tremor: &tremor,
        meta: &meta,
    };
    write_file(&resolved.tremor, &jsonfmt::to_json_bytes(&report)?)?;

    if let Some(svg_path) = &resolved.svg {
        let svg = heatmap_svg(
            &spec.frame_times_ms,
            &spec.freqs_hz,
            &spec.power,
            &AxisLabels {
                title: "spectrogram (log power)",
                x: "frame start / ms",
                y: "frequency / Hz",
            },
        )?;
        write_file(svg_path, svg.as_bytes())?;
        meta.write_sidecar(svg_path)?;
    }
    Ok(())
}

/// Matrix layout: `t_ms,f0,f1,...` header, then one row per frame.
fn matrix_csv(spec: &Spectrogram) -> String {
    let mut csv = String::from("t_ms");
    for f in &spec.freqs_hz {
        let _ = write!(csv, ",{f}");
    }
    csv.push('\n');
    for (t, row) in spec.frame_times_ms.iter().zip(&spec.power) {
        let _ = write!(csv, "{t}");
        for p in row {
            let _ = write!(csv, ",{p}");
        }
        csv.push('\n');
    }
    csv
}

fn core_channel(arg: SpectralChannelArg) -> Channel {
    match arg {
        SpectralChannelArg::X => Channel::X,
        SpectralChannelArg::Y => Channel::Y,
        SpectralChannelArg::Z => Channel::Z,
        SpectralChannelArg::Magnitude => Channel::Magnitude,
    }
}

fn core_window(arg: WindowFnArg) -> WindowFn {
    match arg {
        WindowFnArg::Rectangular => WindowFn::Rectangular,
        WindowFnArg::Hann => WindowFn::Hann,
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    path.with_file_name(name)
}
