//! Shared plumbing: the CLI error type, input loading with digests,
//! output sinks and small option parsers.

use std::fs;
use std::io::{self, Cursor, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use triax_core::ingest::{self, Format};
use triax_core::Series;

use crate::args::FormatArg;

/// Anything a subcommand can fail with. Core and I/O problems exit 1;
/// configuration problems exit 2.
#[derive(Debug)]
pub enum CliError {
    Core(triax_core::Error),
    Io { path: PathBuf, source: io::Error },
    Config(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "Io",
            CliError::Config(_) => "ConfigInvalid",
        }
    }

    /// One-line message for the `ERROR <code>: <detail>` diagnostic.
    pub fn detail(&self) -> String {
        let text = match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io { path, source } => format!("{}: {source}", path.display()),
            CliError::Config(msg) => msg.clone(),
        };
        text.replace('\n', "; ")
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_config() => 2,
            CliError::Core(_) | CliError::Io { .. } => 1,
            CliError::Config(_) => 2,
        }
    }
}

impl From<triax_core::Error> for CliError {
    fn from(e: triax_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub fn io_error(path: &Path, source: io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// An input recording together with the digest recorded in metadata.
pub struct LoadedSeries {
    pub path: PathBuf,
    pub sha256: String,
    pub series: Series,
}

/// Read, digest and parse one input file. The digest is computed over the
/// same bytes that are parsed, so the metadata always matches the data the
/// run actually saw.
pub fn load_series(path: &Path, format: Option<FormatArg>) -> Result<LoadedSeries, CliError> {
    let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let format = match format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Jsonl) => Format::Jsonl,
        None => infer_format(path),
    };
    let series = ingest::parse_series(Cursor::new(bytes), format)?;
    Ok(LoadedSeries {
        path: path.to_path_buf(),
        sha256,
        series,
    })
}

fn infer_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("jsonl") | Some("ndjson") => Format::Jsonl,
        _ => Format::Csv,
    }
}

/// Primary output sink: a file when a path is given, standard output
/// otherwise. Data never goes to standard error.
pub enum Sink {
    File(PathBuf),
    Stdout,
}

impl Sink {
    pub fn new(path: Option<&Path>) -> Self {
        match path {
            Some(p) => Sink::File(p.to_path_buf()),
            None => Sink::Stdout,
        }
    }

    pub fn path(&self) -> Option<&Path> {
        match self {
            Sink::File(p) => Some(p),
            Sink::Stdout => None,
        }
    }

    pub fn write(&self, bytes: &[u8]) -> Result<(), CliError> {
        match self {
            Sink::File(p) => fs::write(p, bytes).map_err(|e| io_error(p, e)),
            Sink::Stdout => {
                let mut out = io::stdout().lock();
                out.write_all(bytes)
                    .and_then(|()| out.flush())
                    .map_err(|e| io_error(Path::new("<stdout>"), e))
            }
        }
    }
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| io_error(path, e))
}

/// Parse a duration like `600s`, `10m`, `250ms` or a plain millisecond
/// count into milliseconds. Fractions are fine as long as the result is a
/// whole positive number of milliseconds.
pub fn parse_duration_ms(text: &str) -> Result<i64, CliError> {
    let text = text.trim();
    let (number, unit_ms) = if let Some(t) = text.strip_suffix("ms") {
        (t, 1.0)
    } else if let Some(t) = text.strip_suffix('s') {
        (t, 1_000.0)
    } else if let Some(t) = text.strip_suffix('m') {
        (t, 60_000.0)
    } else {
        (text, 1.0)
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("cannot parse duration '{text}'")))?;
    let ms = value * unit_ms;
    // cap below 2^53 so the whole-number check and the cast stay exact
    if !(ms.is_finite() && ms > 0.0 && ms.fract() == 0.0 && ms <= 9.0e15) {
        return Err(CliError::Config(format!(
            "duration '{text}' must be a positive whole number of milliseconds"
        )));
    }
    Ok(ms as i64)
}

/// Parse a `LO:HI` frequency band in Hz.
pub fn parse_band(text: &str) -> Result<(f64, f64), CliError> {
    let err = || {
        CliError::Config(format!(
            "cannot parse band '{text}': expected LO:HI in Hz, e.g. 0.5:4"
        ))
    };
    let (lo, hi) = text.split_once(':').ok_or_else(err)?;
    let lo: f64 = lo.trim().parse().map_err(|_| err())?;
    let hi: f64 = hi.trim().parse().map_err(|_| err())?;
    Ok((lo, hi))
}

/// Three-way option resolution: flag beats config file beats default.
pub fn resolve<T: Clone>(flag: Option<&T>, file: Option<&T>, default: T) -> T {
    flag.or(file).cloned().unwrap_or(default)
}
