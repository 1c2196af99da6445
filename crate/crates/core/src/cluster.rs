//! Activity-tier classification: k-means over per-window moment features.
//!
//! Distances are computed in per-dimension standardized (z-score) space so
//! that the std feature (m/s²) cannot drown the dimensionless shape
//! features; centroids are reported in raw feature units. Initialization is
//! greedy farthest-point: the first center is the point nearest the feature
//! mean, each further center the point with the largest distance to the
//! chosen set. The seed only breaks exact distance ties, so runs are
//! deterministic for fixed inputs and seed.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::{segment_windows, Series};
use crate::moments::{self, MomentVector};
use crate::rng;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 200;

/// Activity intensity tier, ordered by movement energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Active,
    Moderate,
    Passive,
}

impl Tier {
    pub fn label(&self) -> &'static str {
        match self {
            Tier::Active => "active",
            Tier::Moderate => "moderate",
            Tier::Passive => "passive",
        }
    }
}

/// Moment component selectable as a cluster feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Moment {
    Mean,
    Std,
    Skewness,
    Exkurtosis,
}

impl Moment {
    pub fn name(&self) -> &'static str {
        match self {
            Moment::Mean => "mean",
            Moment::Std => "std",
            Moment::Skewness => "skewness",
            Moment::Exkurtosis => "exkurtosis",
        }
    }

    fn pick(&self, mv: &MomentVector) -> f64 {
        match self {
            Moment::Mean => mv.mean,
            Moment::Std => mv.std,
            Moment::Skewness => mv.skewness,
            Moment::Exkurtosis => mv.exkurtosis,
        }
    }
}

/// Default feature order: std, skewness, exkurtosis of the squared
/// magnitude. The std component comes first so tier ordering has a
/// well-known column.
pub const DEFAULT_FEATURES: [Moment; 3] = [Moment::Std, Moment::Skewness, Moment::Exkurtosis];

/// One window's feature point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureVector {
    /// Window start time in ms (unique within one series).
    pub window_id: i64,
    pub features: Vec<f64>,
    /// Pass-through activity tag from the source data, if any.
    pub source_label: Option<String>,
}

/// Fitted k-means model. `centroids` are in raw feature units; `inertia`
/// is the sum of squared point-to-centroid distances in the standardized
/// space the algorithm iterates in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterModel {
    pub k: usize,
    pub centroids: Vec<Vec<f64>>,
    /// Cluster index per input feature vector, in input order.
    pub assignments: Vec<usize>,
    pub window_ids: Vec<i64>,
    pub inertia: f64,
    pub iterations: usize,
    /// Tier per cluster index; populated via [`tier_labels`] when k = 3.
    pub tier_map: Option<Vec<Tier>>,
}

/// Extract per-window moment features of the raw squared magnitude.
///
/// The raw (unstandardized) channel keeps the window's scale, which is what
/// separates activity tiers; window_id is the window start time and the
/// source label is passed through from the window's first sample.
pub fn window_features(
    series: &Series,
    window_ms: i64,
    min_samples: usize,
    selection: &[Moment],
) -> Result<Vec<FeatureVector>> {
    if selection.is_empty() {
        return Err(Error::ConfigInvalid(
            "feature selection must name at least one moment".into(),
        ));
    }
    let seg = segment_windows(series, window_ms, min_samples)?;
    let mut out = Vec::with_capacity(seg.windows.len());
    for w in &seg.windows {
        let mag2: Vec<f64> = w
            .samples
            .iter()
            .map(|s| s.ax * s.ax + s.ay * s.ay + s.az * s.az)
            .collect();
        let mv = moments::moment_vector(&mag2).map_err(|e| match e {
            Error::DegenerateDistribution { .. } => Error::DegenerateDistribution {
                context: format!("window starting at {} ms", w.start_ms),
            },
            other => other,
        })?;
        out.push(FeatureVector {
            window_id: w.start_ms,
            features: selection.iter().map(|m| m.pick(&mv)).collect(),
            source_label: series.label_at(w.first_index).map(str::to_owned),
        });
    }
    Ok(out)
}

/// Lloyd k-means with greedy farthest-point initialization.
///
/// Stops when the largest centroid displacement drops below `tol` or after
/// `max_iter` iterations. Assignment ties go to the lowest cluster index;
/// a cluster that loses all points is re-seeded on the point farthest from
/// its assigned centroid, never by random restart.
pub fn kmeans(
    features: &[FeatureVector],
    k: usize,
    seed: u64,
    max_iter: usize,
    tol: f64,
) -> Result<ClusterModel> {
    if k < 1 {
        return Err(Error::ConfigInvalid("k must be at least 1".into()));
    }
    if max_iter < 1 {
        return Err(Error::ConfigInvalid("max_iter must be at least 1".into()));
    }
    if !(tol >= 0.0) {
        return Err(Error::ConfigInvalid(format!(
            "tol must be non-negative, got {tol}"
        )));
    }
    let dim = validate_features(features)?;
    let distinct = count_distinct(features);
    if distinct < k {
        return Err(Error::TooFewDistinctPoints { distinct, k });
    }

    let pts = standardized(features, dim);
    let n = pts.len();
    let mut rng = rng::stream(seed, 0);

    // greedy farthest-point init; the RNG only breaks exact ties
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mean = vec![0.0; dim]; // standardized space is centered by construction
    centers.push(pts[pick(&pts, &mut rng, |p| -dist2(p, &mean))].clone());
    while centers.len() < k {
        let idx = pick(&pts, &mut rng, |p| {
            centers
                .iter()
                .map(|c| dist2(p, c))
                .fold(f64::INFINITY, f64::min)
        });
        centers.push(pts[idx].clone());
    }

    let mut assignments = vec![0usize; n];
    let mut iterations = 0;
    let mut prev_inertia = f64::INFINITY;
    for _ in 0..max_iter {
        iterations += 1;
        let mut iter_inertia = 0.0;
        for (i, p) in pts.iter().enumerate() {
            let (c, d2) = nearest(p, &centers);
            assignments[i] = c;
            iter_inertia += d2;
        }
        debug_assert!(
            iter_inertia <= prev_inertia * (1.0 + 1e-12) + 1e-12,
            "inertia increased: {prev_inertia} -> {iter_inertia}"
        );
        prev_inertia = iter_inertia;

        let mut next: Vec<Vec<f64>> = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &c) in pts.iter().zip(&assignments) {
            counts[c] += 1;
            for (acc, v) in next[c].iter_mut().zip(p) {
                *acc += v;
            }
        }
        for (c, count) in counts.iter().enumerate() {
            if *count > 0 {
                for v in next[c].iter_mut() {
                    *v /= *count as f64;
                }
            }
        }
        resolve_empty(&pts, &centers, &mut assignments, &mut next, &mut counts);

        let moved = centers
            .iter()
            .zip(&next)
            .map(|(a, b)| dist2(a, b).sqrt())
            .fold(0.0, f64::max);
        centers = next;
        if moved < tol {
            break;
        }
    }
    // final assignment against the converged centers
    let mut inertia = 0.0;
    for (i, p) in pts.iter().enumerate() {
        let (c, d2) = nearest(p, &centers);
        assignments[i] = c;
        inertia += d2;
    }

    // report centroids as raw-feature means of their members
    let mut centroids = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (f, &c) in features.iter().zip(&assignments) {
        counts[c] += 1;
        for (acc, v) in centroids[c].iter_mut().zip(&f.features) {
            *acc += v;
        }
    }
    for (c, count) in counts.iter().enumerate() {
        for v in centroids[c].iter_mut() {
            *v /= (*count).max(1) as f64;
        }
    }

    Ok(ClusterModel {
        k,
        centroids,
        assignments,
        window_ids: features.iter().map(|f| f.window_id).collect(),
        inertia,
        iterations,
        tier_map: None,
    })
}

/// Order the three clusters by descending centroid std and name them
/// active / moderate / passive. `std_component` is the index of the std
/// feature in the feature order (0 for [`DEFAULT_FEATURES`]).
pub fn tier_labels(model: &ClusterModel, std_component: usize) -> Result<Vec<Tier>> {
    if model.k != 3 {
        return Err(Error::ConfigInvalid(format!(
            "tier labels need exactly 3 clusters, got {}",
            model.k
        )));
    }
    let stds: Vec<f64> = model
        .centroids
        .iter()
        .map(|c| c.get(std_component).copied().unwrap_or(f64::NAN))
        .collect();
    if stds.iter().any(|v| !v.is_finite()) {
        return Err(Error::ConfigInvalid(format!(
            "std component {std_component} out of range or non-finite"
        )));
    }
    for a in 0..3 {
        for b in a + 1..3 {
            if stds[a] == stds[b] {
                return Err(Error::TieOnStd { a, b });
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| stds[b].partial_cmp(&stds[a]).unwrap());
    let mut map = vec![Tier::Passive; 3];
    map[order[0]] = Tier::Active;
    map[order[1]] = Tier::Moderate;
    map[order[2]] = Tier::Passive;
    Ok(map)
}

fn validate_features(features: &[FeatureVector]) -> Result<usize> {
    let first = features.first().ok_or(Error::EmptyInput)?;
    let dim = first.features.len();
    if dim == 0 {
        return Err(Error::ConfigInvalid("feature vectors are empty".into()));
    }
    for (i, f) in features.iter().enumerate() {
        if f.features.len() != dim {
            return Err(Error::ConfigInvalid(format!(
                "feature vector {i} has {} components, expected {dim}",
                f.features.len()
            )));
        }
        if f.features.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue {
                index: i,
                field: "feature",
            });
        }
    }
    Ok(dim)
}

fn count_distinct(features: &[FeatureVector]) -> usize {
    let mut seen: Vec<&[f64]> = Vec::new();
    for f in features {
        if !seen.iter().any(|s| *s == f.features.as_slice()) {
            seen.push(&f.features);
        }
    }
    seen.len()
}

/// Z-score each dimension; a constant dimension carries no information and
/// is mapped to 0.
fn standardized(features: &[FeatureVector], dim: usize) -> Vec<Vec<f64>> {
    let n = features.len() as f64;
    let mut mean = vec![0.0; dim];
    for f in features {
        for (m, v) in mean.iter_mut().zip(&f.features) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= n;
    }
    let mut scale = vec![0.0; dim];
    for f in features {
        for ((s, m), v) in scale.iter_mut().zip(&mean).zip(&f.features) {
            let d = v - m;
            *s += d * d;
        }
    }
    for s in scale.iter_mut() {
        *s = if n > 1.0 { (*s / (n - 1.0)).sqrt() } else { 0.0 };
        if *s == 0.0 {
            *s = 1.0;
        }
    }
    features
        .iter()
        .map(|f| {
            f.features
                .iter()
                .zip(&mean)
                .zip(&scale)
                .map(|((v, m), s)| (v - m) / s)
                .collect()
        })
        .collect()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
}

fn nearest(p: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    let mut best = 0;
    let mut best_d2 = f64::INFINITY;
    for (c, center) in centers.iter().enumerate() {
        let d2 = dist2(p, center);
        if d2 < best_d2 {
            best = c;
            best_d2 = d2;
        }
    }
    (best, best_d2)
}

/// Index maximizing `score`; exact ties are broken by the seeded RNG so the
/// result is still deterministic for a fixed seed.
fn pick<R: Rng>(pts: &[Vec<f64>], rng: &mut R, score: impl Fn(&[f64]) -> f64) -> usize {
    let mut best_score = f64::NEG_INFINITY;
    let mut ties: Vec<usize> = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let s = score(p);
        if s > best_score {
            best_score = s;
            ties.clear();
            ties.push(i);
        } else if s == best_score {
            ties.push(i);
        }
    }
    ties[rng.random_range(0..ties.len())]
}

/// Re-seed each empty cluster on the point currently farthest from its
/// assigned centroid (lowest index on ties); the donated point moves to the
/// empty cluster immediately so no cluster stays empty.
fn resolve_empty(
    pts: &[Vec<f64>],
    old_centers: &[Vec<f64>],
    assignments: &mut [usize],
    next: &mut [Vec<f64>],
    counts: &mut [usize],
) {
    for c in 0..next.len() {
        if counts[c] > 0 {
            continue;
        }
        let mut donor = usize::MAX;
        let mut worst = f64::NEG_INFINITY;
        for (i, p) in pts.iter().enumerate() {
            if counts[assignments[i]] <= 1 {
                continue; // do not empty another cluster
            }
            let d2 = dist2(p, &old_centers[assignments[i]]);
            if d2 > worst {
                worst = d2;
                donor = i;
            }
        }
        if donor == usize::MAX {
            continue; // fewer points than clusters left to fill; unreachable given distinct >= k
        }
        counts[assignments[donor]] -= 1;
        assignments[donor] = c;
        counts[c] = 1;
        next[c] = pts[donor].clone();
    }
}
