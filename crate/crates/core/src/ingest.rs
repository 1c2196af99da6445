//! Parsing, validation and windowing of 3-axis accelerometer recordings.
//!
//! Two input formats are supported: CSV with the exact header
//! `t_ms,ax,ay,az` (plus an optional trailing `label` column) and JSONL with
//! one `{"t_ms": .., "ax": .., "ay": .., "az": ..}` object per line.
//! Timestamps must be strictly increasing; irregular sampling rates are
//! accepted (moment statistics are order-independent), with the nominal rate
//! recorded as the median of `1000 / dt_ms`. The spectral module applies its
//! own stricter uniformity check.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One timestamped 3-axis acceleration measurement, in m/s².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t_ms: i64,
    pub ax: f64,
    pub ay: f64,
    pub az: f64,
}

/// Summary of a parsed series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesMeta {
    pub count: usize,
    pub duration_ms: i64,
    /// Median of `1000 / dt_ms` over consecutive sample pairs; 0 when the
    /// series has a single sample.
    pub nominal_rate_hz: f64,
}

/// A validated accelerometer recording: strictly increasing timestamps,
/// finite values, optional per-sample activity labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    samples: Vec<Sample>,
    labels: Option<Vec<String>>,
    meta: SeriesMeta,
    /// Doubled median inter-sample gap, exact in integer arithmetic
    /// (the median of integers is an integer or a half-integer).
    median_dt_x2: i64,
}

/// Scalar axis selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Series {
    /// Validate samples and compute metadata. `labels`, when present, must
    /// have one entry per sample.
    pub fn new(samples: Vec<Sample>, labels: Option<Vec<String>>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(ref l) = labels {
            assert_eq!(l.len(), samples.len(), "one label per sample");
        }
        for (i, s) in samples.iter().enumerate() {
            for (field, v) in [("ax", s.ax), ("ay", s.ay), ("az", s.az)] {
                if !v.is_finite() {
                    return Err(Error::NonFiniteValue { index: i, field });
                }
            }
            if s.t_ms < 0 {
                return Err(Error::MalformedRow {
                    line: 0,
                    detail: format!("negative timestamp {} at sample index {i}", s.t_ms),
                });
            }
            if i > 0 && s.t_ms <= samples[i - 1].t_ms {
                return Err(Error::NonMonotonicTimestamp {
                    index: i,
                    t_ms: s.t_ms,
                });
            }
        }
        let count = samples.len();
        let duration_ms = samples[count - 1].t_ms - samples[0].t_ms;
        let median_dt_x2 = median_dt_x2(&samples);
        let nominal_rate_hz = if median_dt_x2 > 0 {
            2000.0 / median_dt_x2 as f64
        } else {
            0.0
        };
        Ok(Series {
            samples,
            labels,
            meta: SeriesMeta {
                count,
                duration_ms,
                nominal_rate_hz,
            },
            median_dt_x2,
        })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label_at(&self, index: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[index].as_str())
    }

    pub fn meta(&self) -> &SeriesMeta {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a Series always holds at least one sample
    }

    /// Doubled median inter-sample gap in ms; 0 for single-sample series.
    pub fn median_dt_x2(&self) -> i64 {
        self.median_dt_x2
    }

    pub fn axis_values(&self, axis: Axis) -> Vec<f64> {
        let f = match axis {
            Axis::X => |s: &Sample| s.ax,
            Axis::Y => |s: &Sample| s.ay,
            Axis::Z => |s: &Sample| s.az,
        };
        self.samples.iter().map(f).collect()
    }

    /// Euclidean magnitude `sqrt(ax^2 + ay^2 + az^2)` per sample.
    pub fn magnitude_values(&self) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| (s.ax * s.ax + s.ay * s.ay + s.az * s.az).sqrt())
            .collect()
    }
}

fn median_dt_x2(samples: &[Sample]) -> i64 {
    if samples.len() < 2 {
        return 0;
    }
    let mut dts: Vec<i64> = samples.windows(2).map(|w| w[1].t_ms - w[0].t_ms).collect();
    dts.sort_unstable();
    let n = dts.len();
    if n % 2 == 1 {
        2 * dts[n / 2]
    } else {
        dts[n / 2 - 1] + dts[n / 2]
    }
}

/// Input format selector for [`parse_series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

/// Parse a recording from a byte stream in the given format.
pub fn parse_series<R: BufRead>(reader: R, format: Format) -> Result<Series> {
    match format {
        Format::Csv => parse_csv(reader),
        Format::Jsonl => parse_jsonl(reader),
    }
}

const CSV_HEADER: &str = "t_ms,ax,ay,az";
const CSV_HEADER_LABELED: &str = "t_ms,ax,ay,az,label";

fn parse_csv<R: BufRead>(reader: R) -> Result<Series> {
    let mut lines = reader.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::EmptyInput)?;
    let header = header.map_err(io_row(1))?;
    let labeled = match header.trim_end_matches('\r') {
        CSV_HEADER => false,
        CSV_HEADER_LABELED => true,
        other => {
            return Err(Error::MalformedRow {
                line: 1,
                detail: format!("header must be `{CSV_HEADER}[,label]`, got `{other}`"),
            })
        }
    };
    let mut samples = Vec::new();
    let mut labels = if labeled { Some(Vec::new()) } else { None };
    for (i, line) in lines {
        let line_no = i + 1;
        let line = line.map_err(io_row(line_no))?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let t_ms = parse_field::<i64>(fields.next(), "t_ms", line_no)?;
        let ax = parse_field::<f64>(fields.next(), "ax", line_no)?;
        let ay = parse_field::<f64>(fields.next(), "ay", line_no)?;
        let az = parse_field::<f64>(fields.next(), "az", line_no)?;
        let label = fields.next();
        match (labeled, label) {
            (true, Some(l)) => labels.as_mut().unwrap().push(l.to_string()),
            (true, None) => {
                return Err(Error::MalformedRow {
                    line: line_no,
                    detail: "missing label column".into(),
                })
            }
            (false, Some(extra)) => {
                return Err(Error::MalformedRow {
                    line: line_no,
                    detail: format!("unexpected extra field `{extra}`"),
                })
            }
            (false, None) => {}
        }
        if fields.next().is_some() {
            return Err(Error::MalformedRow {
                line: line_no,
                detail: "too many fields".into(),
            });
        }
        if t_ms < 0 {
            return Err(Error::MalformedRow {
                line: line_no,
                detail: format!("negative timestamp {t_ms}"),
            });
        }
        samples.push(Sample { t_ms, ax, ay, az });
    }
    Series::new(samples, labels)
}

fn io_row(line: usize) -> impl Fn(std::io::Error) -> Error {
    move |e| Error::MalformedRow {
        line,
        detail: format!("read error: {e}"),
    }
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    name: &str,
    line: usize,
) -> Result<T> {
    let raw = field.ok_or_else(|| Error::MalformedRow {
        line,
        detail: format!("missing field `{name}`"),
    })?;
    raw.trim().parse().map_err(|_| Error::MalformedRow {
        line,
        detail: format!("cannot parse `{raw}` as {name}"),
    })
}

#[derive(Deserialize)]
struct JsonRow {
    t_ms: i64,
    ax: f64,
    ay: f64,
    az: f64,
    #[serde(default)]
    label: Option<String>,
}

fn parse_jsonl<R: BufRead>(reader: R) -> Result<Series> {
    let mut samples = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut any_label = false;
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(io_row(line_no))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: JsonRow = serde_json::from_str(&line).map_err(|e| Error::MalformedRow {
            line: line_no,
            detail: e.to_string(),
        })?;
        if row.t_ms < 0 {
            return Err(Error::MalformedRow {
                line: line_no,
                detail: format!("negative timestamp {}", row.t_ms),
            });
        }
        samples.push(Sample {
            t_ms: row.t_ms,
            ax: row.ax,
            ay: row.ay,
            az: row.az,
        });
        match row.label {
            Some(l) => {
                any_label = true;
                labels.push(l);
            }
            None => labels.push(String::new()),
        }
    }
    Series::new(samples, if any_label { Some(labels) } else { None })
}

/// Write a series back out in the canonical CSV schema. Floats use the
/// shortest representation that round-trips, so `parse(write(s)) == s`.
pub fn write_series_csv<W: Write>(series: &Series, mut out: W) -> std::io::Result<()> {
    if series.labels().is_some() {
        writeln!(out, "{CSV_HEADER_LABELED}")?;
    } else {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for (i, s) in series.samples().iter().enumerate() {
        match series.label_at(i) {
            Some(l) => writeln!(out, "{},{},{},{},{}", s.t_ms, s.ax, s.ay, s.az, l)?,
            None => writeln!(out, "{},{},{},{}", s.t_ms, s.ax, s.ay, s.az)?,
        }
    }
    Ok(())
}

/// One tumbling window over a parent series.
#[derive(Debug, Clone, Copy)]
pub struct Window<'a> {
    pub start_ms: i64,
    /// Exclusive end: every contained sample has `start_ms <= t < end_ms`.
    pub end_ms: i64,
    /// Index of the first contained sample in the parent series.
    pub first_index: usize,
    pub samples: &'a [Sample],
}

/// Result of [`segment_windows`]: the kept windows plus a tally of dropped
/// ones (trailing partial window, windows below `min_samples`).
#[derive(Debug)]
pub struct Segmentation<'a> {
    pub windows: Vec<Window<'a>>,
    pub skipped: usize,
}

/// Split a series into consecutive non-overlapping windows of `window_ms`,
/// starting at the first timestamp.
///
/// The sampled extent is taken as `duration + median dt` (600 samples at
/// 100 Hz cover six full seconds, not 5.99); complete windows are those that
/// fit inside it. The trailing partial window and any window holding fewer
/// than `min_samples` samples are dropped and counted in `skipped`.
pub fn segment_windows(
    series: &Series,
    window_ms: i64,
    min_samples: usize,
) -> Result<Segmentation<'_>> {
    if window_ms <= 0 {
        return Err(Error::ConfigInvalid(format!(
            "window_ms must be positive, got {window_ms}"
        )));
    }
    let samples = series.samples();
    let first_t = samples[0].t_ms;
    // extent and window count in exact doubled-integer arithmetic
    let extent_x2 = 2 * series.meta().duration_ms + series.median_dt_x2();
    let n_complete = (extent_x2 / (2 * window_ms)) as usize;

    let mut windows = Vec::new();
    let mut skipped = 0usize;
    let mut trailing = false;
    let mut cursor = 0usize;
    for w in 0..n_complete {
        let start_ms = first_t + w as i64 * window_ms;
        let end_ms = start_ms + window_ms;
        let begin = cursor;
        while cursor < samples.len() && samples[cursor].t_ms < end_ms {
            cursor += 1;
        }
        if cursor - begin >= min_samples && cursor > begin {
            windows.push(Window {
                start_ms,
                end_ms,
                first_index: begin,
                samples: &samples[begin..cursor],
            });
        } else {
            skipped += 1;
        }
    }
    if cursor < samples.len() {
        trailing = true;
    }
    Ok(Segmentation {
        windows,
        skipped: skipped + usize::from(trailing),
    })
}
