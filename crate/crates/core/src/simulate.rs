//! Seeded synthetic accelerometer series: rest, fatigue and activity-tier
//! regimes with analytically known ground truth.
//!
//! All generators are pure functions of a [`SimSpec`]. Independent RNG
//! streams are assigned to each signal component (stream 0: axis noise,
//! stream 1: jerk process), so disabling a component leaves the others
//! bit-identical; in particular fatigue with `jerk_rate_hz = 0` and
//! `tremor_max_amp = 0` reproduces the rest series exactly.

pub mod defaults;

use rand::Rng;
use rand_distr::{Distribution, Exp, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::{Sample, Series};
use crate::rng;

pub use crate::cluster::Tier;

fn tier_sigma(tier: Tier, params: &Params) -> f64 {
    match tier {
        Tier::Active => params.tier_sigma_active,
        Tier::Moderate => params.tier_sigma_moderate,
        Tier::Passive => params.tier_sigma_passive,
    }
}

/// Generator regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum State {
    Rest,
    Fatigue,
    Activity(Tier),
}

impl State {
    pub fn label(&self) -> &'static str {
        match self {
            State::Rest => "rest",
            State::Fatigue => "fatigue",
            State::Activity(tier) => tier.label(),
        }
    }
}

/// Per-state generator parameters. [`Params::default`] returns the frozen
/// values from [`defaults`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    pub gravity: [f64; 3],
    pub rest_sigma: f64,
    pub jerk_rate_hz: f64,
    pub jerk_mean_amp: f64,
    pub tremor_hz: f64,
    pub tremor_max_amp: f64,
    pub tier_sigma_active: f64,
    pub tier_sigma_moderate: f64,
    pub tier_sigma_passive: f64,
    pub gait_hz: f64,
    pub gait_amp: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            gravity: defaults::GRAVITY,
            rest_sigma: defaults::REST_SIGMA,
            jerk_rate_hz: defaults::JERK_RATE_HZ,
            jerk_mean_amp: defaults::JERK_MEAN_AMP,
            tremor_hz: defaults::TREMOR_HZ,
            tremor_max_amp: defaults::TREMOR_MAX_AMP,
            tier_sigma_active: defaults::TIER_SIGMA_ACTIVE,
            tier_sigma_moderate: defaults::TIER_SIGMA_MODERATE,
            tier_sigma_passive: defaults::TIER_SIGMA_PASSIVE,
            gait_hz: defaults::GAIT_HZ,
            gait_amp: defaults::GAIT_AMP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimSpec {
    pub state: State,
    pub duration_ms: i64,
    pub rate_hz: f64,
    pub seed: u64,
    pub params: Params,
}

impl SimSpec {
    pub fn new(state: State, duration_ms: i64, rate_hz: f64, seed: u64) -> Self {
        SimSpec {
            state,
            duration_ms,
            rate_hz,
            seed,
            params: Params::default(),
        }
    }
}

// RNG stream assignment; component streams never share draws.
const STREAM_NOISE: u64 = 0;
const STREAM_JERK: u64 = 1;

/// Generate a series for whatever state `spec.state` selects.
pub fn generate(spec: &SimSpec) -> Result<Series> {
    match spec.state {
        State::Rest => gen_rest(spec),
        State::Fatigue => gen_fatigue(spec),
        State::Activity(_) => gen_activity(spec),
    }
}

/// Rest regime: gravity offset plus i.i.d. Gaussian noise per axis, so the
/// standardized squared magnitude is chi-square(3) distributed.
pub fn gen_rest(spec: &SimSpec) -> Result<Series> {
    let n = sample_count(spec)?;
    let samples = gaussian_axes(spec, n, spec.params.rest_sigma);
    build(samples, "rest")
}

/// Fatigue regime: rest noise plus one-sided exponential jerks on a
/// randomly chosen axis (Poisson arrivals) plus a low-frequency tremor on
/// the gravity axis whose amplitude ramps linearly from zero; the jerks
/// bound the per-axis skewness away from zero and the ramp makes the
/// per-frame tremor index grow over the recording.
pub fn gen_fatigue(spec: &SimSpec) -> Result<Series> {
    let n = sample_count(spec)?;
    let p = &spec.params;
    let mut samples = gaussian_axes(spec, n, p.rest_sigma);

    if p.jerk_rate_hz > 0.0 {
        if p.jerk_rate_hz.is_infinite() || p.jerk_mean_amp < 0.0 {
            return Err(Error::ConfigInvalid(
                "jerk rate must be finite and mean amplitude non-negative".into(),
            ));
        }
        let mut jerk_rng = rng::stream(spec.seed, STREAM_JERK);
        let gap_s = Exp::new(p.jerk_rate_hz).expect("positive rate");
        let duration_s = spec.duration_ms as f64 / 1000.0;
        let mut t_s = 0.0;
        loop {
            t_s += gap_s.sample(&mut jerk_rng);
            if t_s >= duration_s {
                break;
            }
            let amp = if p.jerk_mean_amp > 0.0 {
                p.jerk_mean_amp * Exp::new(1.0).expect("unit rate").sample(&mut jerk_rng)
            } else {
                0.0
            };
            let axis = jerk_rng.random_range(0..3usize);
            let idx = (t_s * spec.rate_hz) as usize;
            if idx < n {
                let s = &mut samples[idx];
                match axis {
                    0 => s.ax += amp,
                    1 => s.ay += amp,
                    _ => s.az += amp,
                }
            }
        }
    }

    if p.tremor_max_amp != 0.0 {
        let ramp_denom = (n - 1).max(1) as f64;
        for (i, s) in samples.iter_mut().enumerate() {
            let amp = p.tremor_max_amp * i as f64 / ramp_denom;
            let phase = std::f64::consts::TAU * p.tremor_hz * i as f64 / spec.rate_hz;
            s.az += amp * phase.sin();
        }
    }

    build(samples, "fatigue")
}

/// Activity regime: Gaussian noise with tier-dependent sigma; the active
/// tier additionally carries a gait sinusoid on the gravity axis.
pub fn gen_activity(spec: &SimSpec) -> Result<Series> {
    let tier = match spec.state {
        State::Activity(tier) => tier,
        other => {
            return Err(Error::ConfigInvalid(format!(
                "gen_activity needs an activity state, got {:?}",
                other
            )))
        }
    };
    let n = sample_count(spec)?;
    let p = &spec.params;
    let mut samples = gaussian_axes(spec, n, tier_sigma(tier, p));
    if tier == Tier::Active && p.gait_amp != 0.0 {
        for (i, s) in samples.iter_mut().enumerate() {
            let phase = std::f64::consts::TAU * p.gait_hz * i as f64 / spec.rate_hz;
            s.az += p.gait_amp * phase.sin();
        }
    }
    build(samples, tier.label())
}

fn sample_count(spec: &SimSpec) -> Result<usize> {
    if spec.duration_ms <= 0 {
        return Err(Error::ConfigInvalid(format!(
            "duration must be positive, got {} ms",
            spec.duration_ms
        )));
    }
    if !(spec.rate_hz > 0.0) || !spec.rate_hz.is_finite() {
        return Err(Error::ConfigInvalid(format!(
            "sampling rate must be positive and finite, got {}",
            spec.rate_hz
        )));
    }
    if spec.rate_hz > 1000.0 {
        return Err(Error::ConfigInvalid(format!(
            "millisecond timestamps cannot resolve {} Hz (max 1000)",
            spec.rate_hz
        )));
    }
    let n = (spec.duration_ms as f64 * spec.rate_hz / 1000.0).floor() as usize;
    if n == 0 {
        return Err(Error::ConfigInvalid(format!(
            "{} ms at {} Hz yields no samples",
            spec.duration_ms, spec.rate_hz
        )));
    }
    Ok(n)
}

fn gaussian_axes(spec: &SimSpec, n: usize, sigma: f64) -> Vec<Sample> {
    let g = spec.params.gravity;
    let mut noise_rng = rng::stream(spec.seed, STREAM_NOISE);
    (0..n)
        .map(|i| {
            let t_ms = (i as f64 * 1000.0 / spec.rate_hz).round() as i64;
            let nx: f64 = StandardNormal.sample(&mut noise_rng);
            let ny: f64 = StandardNormal.sample(&mut noise_rng);
            let nz: f64 = StandardNormal.sample(&mut noise_rng);
            Sample {
                t_ms,
                ax: g[0] + sigma * nx,
                ay: g[1] + sigma * ny,
                az: g[2] + sigma * nz,
            }
        })
        .collect()
}

fn build(samples: Vec<Sample>, label: &str) -> Result<Series> {
    let labels = vec![label.to_string(); samples.len()];
    Series::new(samples, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::Axis;
    use crate::moments;

    fn spec(state: State, duration_ms: i64, rate_hz: f64, seed: u64) -> SimSpec {
        SimSpec::new(state, duration_ms, rate_hz, seed)
    }

    #[test]
    fn rest_is_deterministic() {
        let s = spec(State::Rest, 10_000, 100.0, 7);
        let a = gen_rest(&s).unwrap();
        let b = gen_rest(&s).unwrap();
        assert_eq!(a.samples(), b.samples());
        assert_eq!(a.labels(), b.labels());
        assert_eq!(a.len(), 1000);
    }

    #[test]
    fn timestamps_follow_rate() {
        let s = spec(State::Rest, 1_000, 100.0, 0);
        let series = gen_rest(&s).unwrap();
        assert_eq!(series.len(), 100);
        assert_eq!(series.samples()[0].t_ms, 0);
        assert_eq!(series.samples()[1].t_ms, 10);
        assert_eq!(series.samples()[99].t_ms, 990);
        // irregular rate still rounds to strictly increasing stamps
        let s = spec(State::Rest, 1_000, 333.0, 0);
        let series = gen_rest(&s).unwrap();
        assert_eq!(series.len(), 333);
    }

    #[test]
    fn rest_standardized_magnitude_is_chi_square_3() {
        let s = spec(State::Rest, 1_000_000, 100.0, 11);
        let series = gen_rest(&s).unwrap();
        let mag2 = moments::squared_magnitude_series(&series, true).unwrap();
        assert_eq!(mag2.len(), 100_000);
        let mean = mag2.iter().sum::<f64>() / mag2.len() as f64;
        let mv = moments::moment_vector(&mag2).unwrap();
        assert!((mean - 3.0).abs() < 0.05, "mean {mean}");
        assert!((mv.skewness - 1.633).abs() < 0.15, "skew {}", mv.skewness);
        assert!((mv.exkurtosis - 4.0).abs() < 0.9, "exkurt {}", mv.exkurtosis);
    }

    #[test]
    fn rest_axes_are_symmetric() {
        let s = spec(State::Rest, 1_000_000, 100.0, 3);
        let series = gen_rest(&s).unwrap();
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let mv = moments::moment_vector(&series.axis_values(axis)).unwrap();
            assert!(mv.skewness.abs() < 0.05, "{axis:?} skew {}", mv.skewness);
            assert!((mv.std - 0.05).abs() < 0.001, "{axis:?} std {}", mv.std);
        }
    }

    #[test]
    fn fatigue_with_zeroed_extras_reduces_to_rest() {
        let mut s = spec(State::Fatigue, 60_000, 100.0, 9);
        s.params.jerk_rate_hz = 0.0;
        s.params.tremor_max_amp = 0.0;
        let fatigue = gen_fatigue(&s).unwrap();
        let rest = gen_rest(&s).unwrap();
        for (a, b) in fatigue.samples().iter().zip(rest.samples()) {
            assert_eq!(a.t_ms, b.t_ms);
            assert_eq!(a.ax.to_bits(), b.ax.to_bits());
            assert_eq!(a.ay.to_bits(), b.ay.to_bits());
            assert_eq!(a.az.to_bits(), b.az.to_bits());
        }
    }

    #[test]
    fn fatigue_skews_every_axis() {
        let s = spec(State::Fatigue, 600_000, 100.0, 13);
        let series = gen_fatigue(&s).unwrap();
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let mv = moments::moment_vector(&series.axis_values(axis)).unwrap();
            // z carries the symmetric tremor as extra variance, which
            // dilutes (but cannot cancel) the one-sided jerk skew
            let floor = if axis == Axis::Z { 0.1 } else { 0.3 };
            assert!(mv.skewness > floor, "{axis:?} skew {}", mv.skewness);
        }
    }

    #[test]
    fn fatigue_is_deterministic() {
        let s = spec(State::Fatigue, 30_000, 100.0, 21);
        let a = gen_fatigue(&s).unwrap();
        let b = gen_fatigue(&s).unwrap();
        assert_eq!(a.samples(), b.samples());
    }

    #[test]
    fn tier_stds_are_ordered_in_every_window() {
        let windows = 8;
        let mut stds = vec![Vec::new(); 3];
        for (slot, tier) in [Tier::Active, Tier::Moderate, Tier::Passive]
            .iter()
            .enumerate()
        {
            let s = spec(State::Activity(*tier), windows * 10_000, 100.0, 17);
            let series = gen_activity(&s).unwrap();
            let seg = crate::ingest::segment_windows(&series, 10_000, 256).unwrap();
            assert_eq!(seg.windows.len(), windows as usize);
            for w in &seg.windows {
                let vals: Vec<f64> = w.samples.iter().map(|smp| smp.az).collect();
                stds[slot].push(moments::moment_vector(&vals).unwrap().std);
            }
        }
        for i in 0..windows as usize {
            assert!(stds[0][i] > stds[1][i] && stds[1][i] > stds[2][i]);
        }
    }

    #[test]
    fn passive_tier_matches_sigma() {
        let s = spec(State::Activity(Tier::Passive), 100_000, 100.0, 23);
        let series = gen_activity(&s).unwrap();
        let mv = moments::moment_vector(&series.axis_values(Axis::Y)).unwrap();
        assert!((mv.std - 0.05).abs() < 0.005, "std {}", mv.std);
    }

    #[test]
    fn labels_carry_the_state_name() {
        let rest = gen_rest(&spec(State::Rest, 1_000, 100.0, 0)).unwrap();
        assert!(rest.labels().unwrap().iter().all(|l| l == "rest"));
        let f = generate(&spec(State::Fatigue, 1_000, 100.0, 0)).unwrap();
        assert!(f.labels().unwrap().iter().all(|l| l == "fatigue"));
        let a = generate(&spec(State::Activity(Tier::Moderate), 1_000, 100.0, 0)).unwrap();
        assert!(a.labels().unwrap().iter().all(|l| l == "moderate"));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(matches!(
            gen_rest(&spec(State::Rest, 0, 100.0, 0)),
            Err(Error::ConfigInvalid(_))
        ));
        assert!(matches!(
            gen_rest(&spec(State::Rest, 1_000, 0.0, 0)),
            Err(Error::ConfigInvalid(_))
        ));
        assert!(matches!(
            gen_rest(&spec(State::Rest, 1_000, 2_000.0, 0)),
            Err(Error::ConfigInvalid(_))
        ));
        assert!(matches!(
            gen_rest(&spec(State::Rest, 5, 100.0, 0)),
            Err(Error::ConfigInvalid(_))
        ));
        assert!(matches!(
            gen_activity(&spec(State::Rest, 1_000, 100.0, 0)),
            Err(Error::ConfigInvalid(_))
        ));
    }
}
