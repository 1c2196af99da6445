//! Error type shared across the toolkit.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed row at line {line}: {detail}")]
    MalformedRow { line: usize, detail: String },

    #[error("non-monotonic timestamp at sample index {index}: t_ms {t_ms} does not increase")]
    NonMonotonicTimestamp { index: usize, t_ms: i64 },

    #[error("non-finite {field} at sample index {index}")]
    NonFiniteValue { index: usize, field: &'static str },

    #[error("empty input: no samples")]
    EmptyInput,

    #[error("too few samples: got {n}, need at least {min}")]
    TooFewSamples { n: usize, min: usize },

    #[error("degenerate distribution (zero variance) in {context}")]
    DegenerateDistribution { context: String },

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("too few distinct points: {distinct} distinct feature vectors for k = {k}")]
    TooFewDistinctPoints { distinct: usize, k: usize },

    #[error("tie on centroid std between clusters {a} and {b}: cannot order activity tiers")]
    TieOnStd { a: usize, b: usize },

    #[error(
        "non-uniform sampling at index {index}: dt {dt_ms} ms vs nominal {nominal_ms} ms \
         (tolerance 10%)"
    )]
    NonUniformSampling {
        index: usize,
        dt_ms: i64,
        nominal_ms: f64,
    },

    #[error("series too short: {n} samples, segment needs {segment_len}")]
    SeriesTooShort { n: usize, segment_len: usize },

    #[error("frequency band [{f_lo}, {f_hi}] Hz out of range (spectrum covers 0..{f_max} Hz)")]
    BandOutOfRange { f_lo: f64, f_hi: f64, f_max: f64 },

    #[error("empty data: nothing to plot")]
    EmptyData,
}

impl Error {
    /// Short machine-parsable code, used by the CLI in `ERROR <code>: <detail>` lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedRow { .. } => "MalformedRow",
            Error::NonMonotonicTimestamp { .. } => "NonMonotonicTimestamp",
            Error::NonFiniteValue { .. } => "NonFiniteValue",
            Error::EmptyInput => "EmptyInput",
            Error::TooFewSamples { .. } => "TooFewSamples",
            Error::DegenerateDistribution { .. } => "DegenerateDistribution",
            Error::ConfigInvalid(_) => "ConfigInvalid",
            Error::TooFewDistinctPoints { .. } => "TooFewDistinctPoints",
            Error::TieOnStd { .. } => "TieOnStd",
            Error::NonUniformSampling { .. } => "NonUniformSampling",
            Error::SeriesTooShort { .. } => "SeriesTooShort",
            Error::BandOutOfRange { .. } => "BandOutOfRange",
            Error::EmptyData => "EmptyData",
        }
    }

    /// True for errors caused by configuration rather than input data.
    /// The CLI maps these to exit code 2, everything else to exit code 1.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::ConfigInvalid(_))
    }
}
