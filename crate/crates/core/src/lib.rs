//! Statistical toolkit for 3-axis accelerometer recordings.
//!
//! The pipeline goes from raw timestamped acceleration samples to a set of
//! fatigue and activity metrics:
//!
//! - [`ingest`] parses and windows CSV/JSONL recordings,
//! - [`moments`] computes the four distribution parameters
//!   (mean, standard deviation, skewness, excess kurtosis),
//! - [`bootstrap`] resamples a scalar channel into a moment cloud and measures
//!   its distance from the chi-square(3) rest reference,
//! - [`cluster`] groups windows into activity tiers by k-means over moment
//!   features,
//! - [`spectral`] produces periodograms, spectrograms and a low-frequency
//!   tremor index,
//! - [`simulate`] generates seeded synthetic recordings for the rest, fatigue
//!   and activity regimes,
//! - [`plot`] renders deterministic SVG scatter plots and heatmaps.
//!
//! All randomized operations take explicit 64-bit seeds and derive one RNG
//! stream per unit of work, so results are bit-identical across runs and
//! independent of the execution order. With the `parallel` feature (default)
//! the bootstrap resamples and spectrogram frames run on rayon; the sequential
//! fallback produces the same bytes.

pub mod bootstrap;
pub mod cluster;
pub mod error;
pub mod ingest;
pub mod moments;
pub mod plot;
pub mod rng;
pub mod simulate;
pub mod spectral;

mod exec;

#[doc(hidden)]
pub mod testkit;

pub use error::{Error, Result};
pub use ingest::{Sample, Series, SeriesMeta, Window};
pub use moments::MomentVector;
