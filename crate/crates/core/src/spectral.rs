//! Periodogram, spectrogram and band-power (tremor index) analysis.
//!
//! All spectra are one-sided power spectral densities: with window
//! coefficients `w` and energy `W = sum(w^2)`,
//! `psd[k] = c * |X[k]|^2 / (fs * W)` where `c` doubles interior bins and
//! leaves DC and Nyquist alone. For the rectangular window this satisfies
//! Parseval exactly: `sum(psd) * df` equals the mean square of the
//! de-meaned segment. Spectral ops require uniform sampling (10% period
//! tolerance) and reject irregular series instead of interpolating.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::ingest::{Axis, Series};

/// Taper applied to each segment before the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowFn {
    Rectangular,
    Hann,
}

impl WindowFn {
    /// Window coefficients of length `n` (symmetric Hann).
    fn coefficients(&self, n: usize) -> Vec<f64> {
        match self {
            WindowFn::Rectangular => vec![1.0; n],
            WindowFn::Hann => {
                if n == 1 {
                    return vec![1.0];
                }
                let denom = (n - 1) as f64;
                (0..n)
                    .map(|i| 0.5 * (1.0 - (std::f64::consts::TAU * i as f64 / denom).cos()))
                    .collect()
            }
        }
    }
}

/// Scalar channel fed into the spectral pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    X,
    Y,
    Z,
    /// `sqrt(ax^2 + ay^2 + az^2)`, orientation independent; the default.
    Magnitude,
}

impl Channel {
    pub fn name(&self) -> &'static str {
        match self {
            Channel::X => "x",
            Channel::Y => "y",
            Channel::Z => "z",
            Channel::Magnitude => "magnitude",
        }
    }

    pub fn extract(&self, series: &Series) -> Vec<f64> {
        match self {
            Channel::X => series.axis_values(Axis::X),
            Channel::Y => series.axis_values(Axis::Y),
            Channel::Z => series.axis_values(Axis::Z),
            Channel::Magnitude => series.magnitude_values(),
        }
    }
}

impl Default for Channel {
    fn default() -> Self {
        Channel::Magnitude
    }
}

/// One-sided PSD of a single segment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Periodogram {
    pub freqs_hz: Vec<f64>,
    /// Power spectral density, (input unit)^2 per Hz.
    pub psd: Vec<f64>,
    /// Segment length in samples.
    pub n: usize,
    /// Sampling rate, Hz.
    pub fs: f64,
    pub window_fn: WindowFn,
}

impl Periodogram {
    /// Bin spacing in Hz.
    pub fn df(&self) -> f64 {
        self.fs / self.n as f64
    }

    /// Rectangle-rule power over `[f_lo, f_hi)`; an upper edge exactly at
    /// the Nyquist frequency includes the Nyquist bin so that the full band
    /// recovers the total power.
    pub fn band_power(&self, f_lo: f64, f_hi: f64) -> Result<f64> {
        let bins = band_bins(&self.freqs_hz, f_lo, f_hi, self.fs)?;
        Ok(bins.map(|k| self.psd[k]).sum::<f64>() * self.df())
    }

    /// Total power: `sum(psd) * df`.
    pub fn total_power(&self) -> f64 {
        self.psd.iter().sum::<f64>() * self.df()
    }
}

/// Hop-advanced sequence of periodograms over one series channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrogram {
    /// Timestamp of the first sample of each frame.
    pub frame_times_ms: Vec<i64>,
    pub freqs_hz: Vec<f64>,
    /// Row = frame, column = frequency bin.
    pub power: Vec<Vec<f64>>,
    pub segment_ms: i64,
    pub overlap: f64,
    pub fs: f64,
    /// Segment length in samples.
    pub segment_len: usize,
    /// Hop in samples between frame starts.
    pub hop_len: usize,
    pub window_fn: WindowFn,
    pub channel: Channel,
}

impl Spectrogram {
    pub fn df(&self) -> f64 {
        self.fs / self.segment_len as f64
    }
}

/// Per-frame band power of a spectrogram.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TremorIndex {
    pub frame_times_ms: Vec<i64>,
    pub band_power: Vec<f64>,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// One-sided PSD of a uniformly sampled scalar segment. The mean is removed
/// before windowing so the gravity offset cannot leak across bins.
pub fn periodogram(xs: &[f64], fs: f64, window_fn: WindowFn) -> Result<Periodogram> {
    validate_fs(fs)?;
    if xs.len() < 8 {
        return Err(Error::TooFewSamples {
            n: xs.len(),
            min: 8,
        });
    }
    let fft = FftPlanner::new().plan_fft_forward(xs.len());
    Ok(periodogram_with_plan(&fft, xs, fs, window_fn))
}

/// Shared worker so spectrogram frames and standalone periodograms follow
/// the exact same arithmetic.
fn periodogram_with_plan(
    fft: &Arc<dyn Fft<f64>>,
    xs: &[f64],
    fs: f64,
    window_fn: WindowFn,
) -> Periodogram {
    let n = xs.len();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let w = window_fn.coefficients(n);
    let energy: f64 = w.iter().map(|v| v * v).sum();
    let mut buf: Vec<Complex<f64>> = xs
        .iter()
        .zip(&w)
        .map(|(x, wi)| Complex::new((x - mean) * wi, 0.0))
        .collect();
    fft.process(&mut buf);

    let half = n / 2; // last one-sided bin index
    let scale = 1.0 / (fs * energy);
    let mut freqs_hz = Vec::with_capacity(half + 1);
    let mut psd = Vec::with_capacity(half + 1);
    for (k, v) in buf.iter().take(half + 1).enumerate() {
        let two_sided = v.norm_sqr() * scale;
        let interior = k != 0 && !(n % 2 == 0 && k == half);
        psd.push(if interior { 2.0 * two_sided } else { two_sided });
        freqs_hz.push(k as f64 * fs / n as f64);
    }
    Periodogram {
        freqs_hz,
        psd,
        n,
        fs,
        window_fn,
    }
}

/// Segment length in samples for a millisecond segment at the series'
/// median sampling period, rounded half up. Exact integer arithmetic on the
/// doubled period keeps half-millisecond periods representable.
fn segment_samples(segment_ms: i64, median_dt_x2: i64) -> usize {
    ((4 * segment_ms + median_dt_x2) / (2 * median_dt_x2)) as usize
}

/// Hop-advanced spectrogram of one channel.
///
/// Frames are independent and evaluated concurrently; rows are assembled in
/// frame order so the output is deterministic.
pub fn spectrogram(
    series: &Series,
    channel: Channel,
    segment_ms: i64,
    overlap: f64,
    window_fn: WindowFn,
) -> Result<Spectrogram> {
    spectrogram_impl(series, channel, segment_ms, overlap, window_fn, false)
}

/// Sequential reference path of [`spectrogram`]; used by the equivalence
/// tests and benchmarks.
pub fn spectrogram_serial(
    series: &Series,
    channel: Channel,
    segment_ms: i64,
    overlap: f64,
    window_fn: WindowFn,
) -> Result<Spectrogram> {
    spectrogram_impl(series, channel, segment_ms, overlap, window_fn, true)
}

fn spectrogram_impl(
    series: &Series,
    channel: Channel,
    segment_ms: i64,
    overlap: f64,
    window_fn: WindowFn,
    force_serial: bool,
) -> Result<Spectrogram> {
    if segment_ms <= 0 {
        return Err(Error::ConfigInvalid(format!(
            "segment must be positive, got {segment_ms} ms"
        )));
    }
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::ConfigInvalid(format!(
            "overlap must lie in [0, 1), got {overlap}"
        )));
    }
    let fs = check_uniform(series)?;
    let xs = channel.extract(series);
    let n = xs.len();
    let segment_len = segment_samples(segment_ms, series.median_dt_x2());
    if n < segment_len {
        return Err(Error::SeriesTooShort { n, segment_len });
    }
    if segment_len < 8 {
        return Err(Error::TooFewSamples {
            n: segment_len,
            min: 8,
        });
    }
    let hop_len = ((segment_len as f64 * (1.0 - overlap)).round() as usize).max(1);
    let frames = (n - segment_len) / hop_len + 1;

    let fft = FftPlanner::new().plan_fft_forward(segment_len);
    let frame_psd = |i: usize| {
        let start = i * hop_len;
        periodogram_with_plan(&fft, &xs[start..start + segment_len], fs, window_fn)
    };
    let rows = if force_serial {
        exec::map_indexed_seq(frames, frame_psd)
    } else {
        exec::map_indexed(frames, frame_psd)
    };

    let freqs_hz = rows[0].freqs_hz.clone();
    let frame_times_ms = (0..frames)
        .map(|i| series.samples()[i * hop_len].t_ms)
        .collect();
    let power = rows.into_iter().map(|p| p.psd).collect();
    Ok(Spectrogram {
        frame_times_ms,
        freqs_hz,
        power,
        segment_ms,
        overlap,
        fs,
        segment_len,
        hop_len,
        window_fn,
        channel,
    })
}

/// Per-frame rectangle-rule band power over `[f_lo, f_hi)`. An upper edge
/// exactly at the Nyquist frequency includes the Nyquist bin, so the band
/// `[0, fs/2]` recovers each frame's total power.
pub fn tremor_index(spec: &Spectrogram, f_lo: f64, f_hi: f64) -> Result<TremorIndex> {
    let bins = band_bins(&spec.freqs_hz, f_lo, f_hi, spec.fs)?;
    let df = spec.df();
    let band_power = spec
        .power
        .iter()
        .map(|row| bins.clone().map(|k| row[k]).sum::<f64>() * df)
        .collect();
    Ok(TremorIndex {
        frame_times_ms: spec.frame_times_ms.clone(),
        band_power,
        f_lo,
        f_hi,
    })
}

fn band_bins(freqs: &[f64], f_lo: f64, f_hi: f64, fs: f64) -> Result<std::ops::Range<usize>> {
    let f_max = fs / 2.0;
    if !(f_lo >= 0.0 && f_lo < f_hi && f_hi <= f_max) || !f_lo.is_finite() || !f_hi.is_finite() {
        return Err(Error::BandOutOfRange { f_lo, f_hi, f_max });
    }
    let include = |f: f64| f >= f_lo && (f < f_hi || (f_hi == f_max && f == f_max));
    let lo = freqs.iter().position(|&f| include(f));
    let hi = freqs.iter().rposition(|&f| include(f));
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok(lo..hi + 1),
        _ => Err(Error::BandOutOfRange { f_lo, f_hi, f_max }),
    }
}

fn validate_fs(fs: f64) -> Result<()> {
    if !(fs > 0.0) || !fs.is_finite() {
        return Err(Error::ConfigInvalid(format!(
            "sampling rate must be positive and finite, got {fs}"
        )));
    }
    Ok(())
}

/// Verify near-uniform sampling (every period within 10% of the median)
/// and return the sampling rate implied by the median period.
fn check_uniform(series: &Series) -> Result<f64> {
    let samples = series.samples();
    let nominal_ms = series.median_dt_x2() as f64 / 2.0;
    for (i, pair) in samples.windows(2).enumerate() {
        let dt_ms = pair[1].t_ms - pair[0].t_ms;
        if (dt_ms as f64 - nominal_ms).abs() > 0.1 * nominal_ms {
            return Err(Error::NonUniformSampling {
                index: i + 1,
                dt_ms,
                nominal_ms,
            });
        }
    }
    Ok(2000.0 / series.median_dt_x2() as f64)
}
