//! Partial-sampling engine: moment clouds, cloud-shape descriptors, the
//! chi-square rest reference and the skewness–kurtosis fatigue distance.
//!
//! Each resample draws a deterministic subsample of the input (one RNG
//! stream per resample index, see [`crate::rng`]), computes its moment
//! vector, and the resulting point cloud is summarized by its centroid and
//! by the eigen-decomposition of the 2x2 skewness–kurtosis covariance:
//! `elongation = sqrt(lmax/lmin)` is the axis ratio of the 1-sigma ellipse
//! (1 = equiaxial cloud), `size = (lmax*lmin)^(1/4)` its geometric-mean
//! axis length. At rest the standardized squared acceleration magnitude is
//! chi-square(3) distributed, so the cloud centroid sits near the analytic
//! point (skew sqrt(8/3), excess kurtosis 4); the fatigue metric is the
//! Euclidean distance of the centroid from that point.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::ingest::Series;
use crate::moments;
use crate::rng;

/// How each resample is drawn from the input values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResampleMode {
    /// Subsample of `ceil(fraction * n)` distinct positions.
    WithoutReplacement,
    /// `ceil(fraction * n)` independent uniform draws; set `fraction = 1.0`
    /// for the classical bootstrap.
    WithReplacement,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BootstrapConfig {
    pub resamples: usize,
    /// Subsample size as a fraction of the input length, in (0, 1].
    pub fraction: f64,
    pub mode: ResampleMode,
    pub seed: u64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            resamples: 1000,
            fraction: 0.5,
            mode: ResampleMode::WithoutReplacement,
            seed: 0,
        }
    }
}

impl BootstrapConfig {
    /// Subsample size for an input of `n` values.
    pub fn subsample_size(&self, n: usize) -> usize {
        (self.fraction * n as f64).ceil() as usize
    }

    fn validate(&self, n: usize) -> Result<()> {
        if n < 8 {
            return Err(Error::TooFewSamples { n, min: 8 });
        }
        if self.resamples < 2 {
            return Err(Error::ConfigInvalid(format!(
                "resamples must be at least 2, got {}",
                self.resamples
            )));
        }
        if !(self.fraction > 0.0 && self.fraction <= 1.0) {
            return Err(Error::ConfigInvalid(format!(
                "fraction must lie in (0, 1], got {}",
                self.fraction
            )));
        }
        if self.subsample_size(n) < 4 {
            return Err(Error::ConfigInvalid(format!(
                "subsample size {} is below 4 (fraction {} of {} values)",
                self.subsample_size(n),
                self.fraction,
                n
            )));
        }
        Ok(())
    }
}

/// Moment point of one resample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CloudPoint {
    pub std: f64,
    pub skewness: f64,
    pub exkurtosis: f64,
}

/// Cloud centroid in (std, skewness, exkurtosis) space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Centroid {
    pub std: f64,
    pub skewness: f64,
    pub exkurtosis: f64,
}

/// Covariance of the cloud in the skewness–kurtosis plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cov2 {
    pub var_skewness: f64,
    pub cov_skew_exkurt: f64,
    pub var_exkurtosis: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenPair {
    pub max: f64,
    pub min: f64,
}

/// Shape descriptors of a bootstrap cloud.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CloudSummary {
    pub resamples: usize,
    pub centroid: Centroid,
    pub cov2: Cov2,
    pub eigvals: EigenPair,
    /// `sqrt(lmax / lmin)`; 1 means an equiaxial (round) cloud.
    pub elongation: f64,
    /// `(lmax * lmin)^(1/4)`, the geometric-mean 1-sigma axis length.
    pub size: f64,
}

/// Full bootstrap result: per-resample points in index order plus summary
/// descriptors.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapCloud {
    pub points: Vec<CloudPoint>,
    pub summary: CloudSummary,
}

/// The analytic rest point: skewness and excess kurtosis of a chi-square
/// distribution with `k` degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RestReference {
    pub skewness: f64,
    pub exkurtosis: f64,
    pub k: u32,
}

/// Fatigue metrics of one recording against a rest reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FatigueReport {
    pub reference: RestReference,
    pub cloud: CloudSummary,
    /// Euclidean distance from the reference to the cloud centroid in the
    /// skewness–kurtosis plane.
    pub distance: f64,
    /// Name of the analyzed scalar channel.
    pub channel: String,
}

/// Draw `resamples` subsamples of `xs` and compute one moment point each.
///
/// Output is a pure function of `(xs, config)`: resample `i` uses the RNG
/// stream derived from `(config.seed, i)` and points are assembled in index
/// order, so parallel and sequential evaluation agree bit-for-bit.
pub fn bootstrap_cloud(xs: &[f64], config: &BootstrapConfig) -> Result<BootstrapCloud> {
    config.validate(xs.len())?;
    let points = exec::map_indexed(config.resamples, |i| resample_point(xs, config, i));
    collect_cloud(points)
}

/// Sequential reference path of [`bootstrap_cloud`]; used by the equivalence
/// tests and benchmarks.
pub fn bootstrap_cloud_serial(xs: &[f64], config: &BootstrapConfig) -> Result<BootstrapCloud> {
    config.validate(xs.len())?;
    let points = exec::map_indexed_seq(config.resamples, |i| resample_point(xs, config, i));
    collect_cloud(points)
}

fn resample_point(xs: &[f64], config: &BootstrapConfig, index: usize) -> Result<CloudPoint> {
    let n = xs.len();
    let m = config.subsample_size(n);
    let mut rng = rng::stream(config.seed, index as u64);
    let mut draw = Vec::with_capacity(m);
    match config.mode {
        ResampleMode::WithReplacement => {
            for _ in 0..m {
                draw.push(xs[rng.random_range(0..n)]);
            }
        }
        ResampleMode::WithoutReplacement => {
            // partial Fisher-Yates over an index pool
            let mut pool: Vec<u32> = (0..n as u32).collect();
            for j in 0..m {
                let k = rng.random_range(j..n);
                pool.swap(j, k);
                draw.push(xs[pool[j] as usize]);
            }
        }
    }
    let mv = moments::moment_vector(&draw).map_err(|e| match e {
        Error::DegenerateDistribution { .. } => Error::DegenerateDistribution {
            context: format!("bootstrap resample {index} has zero variance"),
        },
        other => other,
    })?;
    Ok(CloudPoint {
        std: mv.std,
        skewness: mv.skewness,
        exkurtosis: mv.exkurtosis,
    })
}

fn collect_cloud(points: Vec<Result<CloudPoint>>) -> Result<BootstrapCloud> {
    // first error in index order wins, regardless of evaluation order
    let points: Vec<CloudPoint> = points.into_iter().collect::<Result<_>>()?;
    let summary = summarize(&points);
    Ok(BootstrapCloud { points, summary })
}

fn summarize(points: &[CloudPoint]) -> CloudSummary {
    let n = points.len() as f64;
    let centroid = Centroid {
        std: points.iter().map(|p| p.std).sum::<f64>() / n,
        skewness: points.iter().map(|p| p.skewness).sum::<f64>() / n,
        exkurtosis: points.iter().map(|p| p.exkurtosis).sum::<f64>() / n,
    };
    let (mut ss, mut sk, mut kk) = (0.0, 0.0, 0.0);
    for p in points {
        let ds = p.skewness - centroid.skewness;
        let dk = p.exkurtosis - centroid.exkurtosis;
        ss += ds * ds;
        sk += ds * dk;
        kk += dk * dk;
    }
    let denom = n - 1.0;
    let cov2 = Cov2 {
        var_skewness: ss / denom,
        cov_skew_exkurt: sk / denom,
        var_exkurtosis: kk / denom,
    };
    let eigvals = eig2(&cov2);
    let elongation = if eigvals.max <= 0.0 {
        1.0
    } else if eigvals.min <= 0.0 {
        f64::INFINITY
    } else {
        (eigvals.max / eigvals.min).sqrt()
    };
    let size = (eigvals.max * eigvals.min).powf(0.25);
    CloudSummary {
        resamples: points.len(),
        centroid,
        cov2,
        eigvals,
        elongation,
        size,
    }
}

/// Eigenvalues of the symmetric 2x2 covariance matrix, largest first.
/// Negative rounding residue is clamped to zero.
fn eig2(c: &Cov2) -> EigenPair {
    let half_tr = 0.5 * (c.var_skewness + c.var_exkurtosis);
    let half_diff = 0.5 * (c.var_skewness - c.var_exkurtosis);
    let disc = (half_diff * half_diff + c.cov_skew_exkurt * c.cov_skew_exkurt).sqrt();
    EigenPair {
        max: (half_tr + disc).max(0.0),
        min: (half_tr - disc).max(0.0),
    }
}

/// Skewness `sqrt(8/k)` and excess kurtosis `12/k` of a chi-square
/// distribution with `k` degrees of freedom.
pub fn rest_reference(k: u32) -> Result<RestReference> {
    if k < 1 {
        return Err(Error::ConfigInvalid(
            "rest reference needs k >= 1 degrees of freedom".into(),
        ));
    }
    let kf = k as f64;
    Ok(RestReference {
        skewness: (8.0 / kf).sqrt(),
        exkurtosis: 12.0 / kf,
        k,
    })
}

/// Euclidean distance between the cloud centroid and the reference point in
/// the skewness–kurtosis plane.
pub fn fatigue_distance(cloud: &CloudSummary, reference: &RestReference) -> f64 {
    let ds = cloud.centroid.skewness - reference.skewness;
    let dk = cloud.centroid.exkurtosis - reference.exkurtosis;
    (ds * ds + dk * dk).sqrt()
}

/// Full fatigue pipeline for one recording: standardized squared-magnitude
/// channel -> bootstrap cloud -> distance from the chi-square(`k`) rest
/// point.
pub fn fatigue_report(series: &Series, config: &BootstrapConfig, k: u32) -> Result<FatigueReport> {
    if series.len() < 8 {
        return Err(Error::TooFewSamples {
            n: series.len(),
            min: 8,
        });
    }
    let xs = moments::squared_magnitude_series(series, true)?;
    let cloud = bootstrap_cloud(&xs, config)?;
    let reference = rest_reference(k)?;
    let distance = fatigue_distance(&cloud.summary, &reference);
    Ok(FatigueReport {
        reference,
        cloud: cloud.summary,
        distance,
        channel: "mag2".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Distribution, StandardNormal};

    fn chi3_draws(n: usize, seed: u64) -> Vec<f64> {
        let mut r = rng::stream(seed, 0);
        (0..n)
            .map(|_| {
                let a: f64 = StandardNormal.sample(&mut r);
                let b: f64 = StandardNormal.sample(&mut r);
                let c: f64 = StandardNormal.sample(&mut r);
                a * a + b * b + c * c
            })
            .collect()
    }

    #[test]
    fn rest_reference_closed_forms() {
        let r3 = rest_reference(3).unwrap();
        assert!((r3.skewness - 1.63299).abs() < 1e-5);
        assert_eq!(r3.skewness, (8.0f64 / 3.0).sqrt());
        assert_eq!(r3.exkurtosis, 4.0);

        let r1 = rest_reference(1).unwrap();
        assert!((r1.skewness - 2.8284).abs() < 1e-4);
        assert_eq!(r1.exkurtosis, 12.0);

        let large = rest_reference(1_000_000).unwrap();
        assert!(large.skewness < 0.01 && large.exkurtosis < 0.01);

        assert!(matches!(rest_reference(0), Err(Error::ConfigInvalid(_))));
    }

    #[test]
    fn rest_reference_matches_monte_carlo() {
        // 1e7 chi-square(3) draws; se(skew) ~ 7e-4, se(exkurt) ~ 5e-3 for
        // this distribution (heavier than the normal-theory values)
        let xs = chi3_draws(10_000_000, 99);
        let mv = moments::moment_vector(&xs).unwrap();
        let r = rest_reference(3).unwrap();
        assert!((mv.skewness - r.skewness).abs() < 0.01, "skew {}", mv.skewness);
        assert!(
            (mv.exkurtosis - r.exkurtosis).abs() < 0.08,
            "exkurt {}",
            mv.exkurtosis
        );
    }

    #[test]
    fn chi3_cloud_centroid_near_reference() {
        let xs = chi3_draws(100_000, 4);
        let cloud = bootstrap_cloud(&xs, &BootstrapConfig::default()).unwrap();
        let c = cloud.summary.centroid;
        assert!((c.skewness - 1.633).abs() < 0.1, "skew {}", c.skewness);
        assert!((c.exkurtosis - 4.0).abs() < 0.3, "exkurt {}", c.exkurtosis);
        assert!((c.std - (6.0f64).sqrt()).abs() < 0.2, "std {}", c.std);
    }

    #[test]
    fn constant_input_degenerates_on_first_resample() {
        let xs = vec![1.0; 100];
        let err = bootstrap_cloud(&xs, &BootstrapConfig::default()).unwrap_err();
        match err {
            Error::DegenerateDistribution { context } => {
                assert!(context.contains("resample 0"), "{context}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn identical_inputs_give_bit_identical_points() {
        let xs = chi3_draws(5_000, 8);
        let config = BootstrapConfig {
            resamples: 64,
            ..BootstrapConfig::default()
        };
        let a = bootstrap_cloud(&xs, &config).unwrap();
        let b = bootstrap_cloud(&xs, &config).unwrap();
        for (p, q) in a.points.iter().zip(&b.points) {
            assert_eq!(p.std.to_bits(), q.std.to_bits());
            assert_eq!(p.skewness.to_bits(), q.skewness.to_bits());
            assert_eq!(p.exkurtosis.to_bits(), q.exkurtosis.to_bits());
        }
    }

    #[test]
    fn parallel_and_serial_agree_bitwise() {
        let xs = chi3_draws(5_000, 2);
        let config = BootstrapConfig {
            resamples: 128,
            ..BootstrapConfig::default()
        };
        let par = bootstrap_cloud(&xs, &config).unwrap();
        let ser = bootstrap_cloud_serial(&xs, &config).unwrap();
        assert_eq!(par, ser);
    }

    #[test]
    fn full_fraction_without_replacement_collapses_to_sample_moments() {
        let xs = chi3_draws(500, 3);
        let config = BootstrapConfig {
            resamples: 16,
            fraction: 1.0,
            mode: ResampleMode::WithoutReplacement,
            seed: 5,
        };
        let cloud = bootstrap_cloud(&xs, &config).unwrap();
        let mv = moments::moment_vector(&xs).unwrap();
        for p in &cloud.points {
            // every resample is a permutation of the full multiset; only
            // summation order differs
            assert!((p.std - mv.std).abs() < 1e-9);
            assert!((p.skewness - mv.skewness).abs() < 1e-9);
            assert!((p.exkurtosis - mv.exkurtosis).abs() < 1e-9);
        }
    }

    #[test]
    fn with_replacement_mode_runs() {
        let xs = chi3_draws(1_000, 6);
        let config = BootstrapConfig {
            resamples: 100,
            fraction: 1.0,
            mode: ResampleMode::WithReplacement,
            seed: 1,
        };
        let cloud = bootstrap_cloud(&xs, &config).unwrap();
        assert_eq!(cloud.points.len(), 100);
        assert!(cloud.summary.eigvals.max >= cloud.summary.eigvals.min);
    }

    #[test]
    fn elongation_at_least_one() {
        for seed in 0..10u64 {
            let xs = chi3_draws(2_000, seed);
            let config = BootstrapConfig {
                resamples: 200,
                seed,
                ..BootstrapConfig::default()
            };
            let s = bootstrap_cloud(&xs, &config).unwrap().summary;
            assert!(s.elongation >= 1.0);
            assert!(s.eigvals.max >= s.eigvals.min && s.eigvals.min >= 0.0);
        }
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let xs = vec![0.0; 4];
        assert!(matches!(
            bootstrap_cloud(&xs, &BootstrapConfig::default()),
            Err(Error::TooFewSamples { n: 4, min: 8 })
        ));
        let xs = chi3_draws(100, 0);
        for bad in [
            BootstrapConfig {
                resamples: 1,
                ..BootstrapConfig::default()
            },
            BootstrapConfig {
                fraction: 0.0,
                ..BootstrapConfig::default()
            },
            BootstrapConfig {
                fraction: 1.5,
                ..BootstrapConfig::default()
            },
            BootstrapConfig {
                fraction: 0.01,
                ..BootstrapConfig::default()
            },
        ] {
            assert!(matches!(
                bootstrap_cloud(&xs, &bad),
                Err(Error::ConfigInvalid(_))
            ));
        }
    }

    #[test]
    fn fatigue_distance_hand_cases() {
        let reference = rest_reference(3).unwrap();
        let mut summary = summarize(&[
            CloudPoint {
                std: 1.0,
                skewness: 1.0,
                exkurtosis: 3.0,
            },
            CloudPoint {
                std: 1.0,
                skewness: 2.0,
                exkurtosis: 5.0,
            },
        ]);
        summary.centroid = Centroid {
            std: 1.0,
            skewness: reference.skewness,
            exkurtosis: reference.exkurtosis,
        };
        assert_eq!(fatigue_distance(&summary, &reference), 0.0);

        summary.centroid.skewness = 0.5;
        summary.centroid.exkurtosis = 1.0;
        let expected = ((reference.skewness - 0.5f64).powi(2) + 9.0).sqrt();
        assert!((fatigue_distance(&summary, &reference) - expected).abs() < 1e-12);
        assert!((expected - 3.2068).abs() < 1e-4);
    }

    #[test]
    fn fatigue_distance_is_symmetric_metric() {
        let mut r = rng::stream(1, 0);
        for _ in 0..50 {
            let a = random_summary(&mut r);
            let b = random_summary(&mut r);
            let c = random_summary(&mut r);
            let ra = to_ref(&a);
            let rb = to_ref(&b);
            let rc = to_ref(&c);
            let dab = fatigue_distance(&a, &rb);
            let dba = fatigue_distance(&b, &ra);
            assert!((dab - dba).abs() < 1e-12);
            assert!(dab >= 0.0);
            // triangle inequality through c
            let dac = fatigue_distance(&a, &rc);
            let dcb = fatigue_distance(&c, &rb);
            assert!(dab <= dac + dcb + 1e-12);
        }
    }

    fn random_summary(r: &mut impl Rng) -> CloudSummary {
        let mut s = summarize(&[
            CloudPoint {
                std: 1.0,
                skewness: 0.0,
                exkurtosis: 0.0,
            },
            CloudPoint {
                std: 1.0,
                skewness: 1.0,
                exkurtosis: 1.0,
            },
        ]);
        s.centroid.skewness = r.random::<f64>() * 8.0 - 4.0;
        s.centroid.exkurtosis = r.random::<f64>() * 16.0 - 8.0;
        s
    }

    fn to_ref(s: &CloudSummary) -> RestReference {
        RestReference {
            skewness: s.centroid.skewness,
            exkurtosis: s.centroid.exkurtosis,
            k: 3,
        }
    }

    #[test]
    fn rest_and_fatigue_reports_separate() {
        use crate::simulate::{gen_fatigue, gen_rest, SimSpec, State};

        let config = BootstrapConfig::default();
        let rest = gen_rest(&SimSpec::new(State::Rest, 600_000, 100.0, 42)).unwrap();
        let fat = gen_fatigue(&SimSpec::new(State::Fatigue, 600_000, 100.0, 42)).unwrap();
        let rr = fatigue_report(&rest, &config, 3).unwrap();
        let rf = fatigue_report(&fat, &config, 3).unwrap();

        // Calibrated thresholds: across simulated 10-minute rest recordings
        // the centroid stays within 0.5 of the chi-square(3) point and the
        // cloud elongation stays in the low tens (skewness and excess
        // kurtosis estimates are strongly correlated and the kurtosis axis
        // carries roughly ten times the spread, so even a rest cloud is a
        // thin ellipse in raw coordinates). Fatigue clouds land hundreds of
        // units away and are another order of magnitude more elongated.
        assert!(rr.distance < 0.5, "rest distance {}", rr.distance);
        assert!(rr.cloud.elongation < 40.0, "rest elongation {}", rr.cloud.elongation);
        assert!(rf.distance > 100.0, "fatigue distance {}", rf.distance);
        assert!(rf.cloud.elongation > 100.0, "fatigue elongation {}", rf.cloud.elongation);
        assert_eq!(rr.channel, "mag2");
        assert_eq!(rr.reference.k, 3);
    }

    #[test]
    fn report_is_invariant_under_axis_scaling() {
        use crate::ingest::{Sample, Series};
        use crate::simulate::{gen_rest, SimSpec, State};

        let base = gen_rest(&SimSpec::new(State::Rest, 60_000, 100.0, 7)).unwrap();
        let scaled: Vec<Sample> = base
            .samples()
            .iter()
            .map(|s| Sample {
                t_ms: s.t_ms,
                ax: s.ax * 3.7,
                ay: s.ay * 3.7,
                az: s.az * 3.7,
            })
            .collect();
        let scaled = Series::new(scaled, None).unwrap();

        let config = BootstrapConfig::default();
        let a = fatigue_report(&base, &config, 3).unwrap();
        let b = fatigue_report(&scaled, &config, 3).unwrap();

        // axis standardization removes any positive per-axis gain, so the
        // report is unchanged up to floating-point rounding
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * x.abs().max(1.0);
        assert!(close(a.distance, b.distance));
        assert!(close(a.cloud.elongation, b.cloud.elongation));
        assert!(close(a.cloud.size, b.cloud.size));
        assert!(close(a.cloud.centroid.skewness, b.cloud.centroid.skewness));
        assert!(close(a.cloud.centroid.exkurtosis, b.cloud.centroid.exkurtosis));
    }

    #[test]
    fn short_series_report_is_rejected() {
        let series = crate::testkit::series_from_rows(&[
            (0, 0.1, 0.2, 9.8),
            (10, 0.2, 0.1, 9.7),
            (20, 0.0, 0.3, 9.9),
        ]);
        assert!(matches!(
            fatigue_report(&series, &BootstrapConfig::default(), 3),
            Err(Error::TooFewSamples { .. })
        ));
    }
}
