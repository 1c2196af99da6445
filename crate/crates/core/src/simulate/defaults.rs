//! Frozen default parameters for the synthetic generators.
//!
//! Tests and acceptance thresholds are calibrated against these exact
//! values. Changing any of them is a breaking change to the oracle: bump
//! [`DEFAULTS_VERSION`] and recalibrate the affected tolerances.

pub const DEFAULTS_VERSION: u32 = 1;

/// Gravity offset applied to every state, m/s².
pub const GRAVITY: [f64; 3] = [0.0, 0.0, 9.81];

/// Rest-state per-axis Gaussian noise sigma, m/s².
pub const REST_SIGMA: f64 = 0.05;

/// Fatigue jerk arrival rate, events per second.
pub const JERK_RATE_HZ: f64 = 2.0;

/// Mean of the exponentially distributed jerk amplitude, m/s².
pub const JERK_MEAN_AMP: f64 = 0.15;

/// Fatigue tremor frequency, Hz.
pub const TREMOR_HZ: f64 = 1.5;

/// Tremor amplitude at the end of the recording; the ramp is linear from 0.
pub const TREMOR_MAX_AMP: f64 = 0.2;

/// Activity-tier noise sigmas, m/s² (10x separation between tiers).
pub const TIER_SIGMA_ACTIVE: f64 = 3.0;
pub const TIER_SIGMA_MODERATE: f64 = 0.5;
pub const TIER_SIGMA_PASSIVE: f64 = 0.05;

/// Gait sinusoid mixed into the active tier.
pub const GAIT_HZ: f64 = 2.0;
pub const GAIT_AMP: f64 = 2.0;
