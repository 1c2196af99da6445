//! Distribution parameters of scalar samples: mean, standard deviation,
//! skewness and excess kurtosis, plus the standardized squared-magnitude
//! transform that the fatigue metric is built on.
//!
//! Central moments use a corrected two-pass computation (approximate mean,
//! centered power sums, exact recentring about the refined mean); a one-pass
//! raw-moment formula would cancel catastrophically in `m4` for signals
//! riding on the gravity offset. Skewness and kurtosis use
//! the population-style ratios `g1 = m3 / m2^1.5` and `g2 = m4 / m2^2 - 3`
//! with the n-denominator `m2`; only the reported standard deviation uses the
//! n-1 convention.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::Series;

/// The four distribution parameters of a scalar sample set.
///
/// `exkurtosis` is excess kurtosis (normal distribution = 0). Skewness and
/// excess kurtosis are dimensionless and invariant under `x -> a*x + b`
/// for `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentVector {
    pub mean: f64,
    pub std: f64,
    pub skewness: f64,
    pub exkurtosis: f64,
}

/// Central moments `m_k = mean((x - mean)^k)` for k = 2, 3, 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralMoments {
    pub mean: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
}

/// Corrected two-pass central moments of `xs`. Needs at least 2 samples.
///
/// The first pass takes an approximate mean; the second accumulates power
/// sums of the deviations from it, including the plain sum `s1` that a
/// perfect mean would make zero. The moments are then recentred about the
/// refined mean `m0 + s1/n` through exact binomial identities. Without the
/// recentring, an input like `9.8 + 1e-6 * noise` keeps a mean residual
/// near `ulp(9.8)` that leaks into `m3` at a scale comparable to the
/// signal's own third moment.
pub fn central_moments(xs: &[f64]) -> Result<CentralMoments> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::TooFewSamples { n, min: 2 });
    }
    let nf = n as f64;
    let m0 = xs.iter().sum::<f64>() / nf;
    let (mut s1, mut s2, mut s3, mut s4) = (0.0, 0.0, 0.0, 0.0);
    for &x in xs {
        let d = x - m0;
        let d2 = d * d;
        s1 += d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    let delta = s1 / nf;
    let p2 = s2 / nf;
    let p3 = s3 / nf;
    Ok(CentralMoments {
        mean: m0 + delta,
        m2: p2 - delta * delta,
        m3: p3 - 3.0 * delta * p2 + 2.0 * delta.powi(3),
        m4: s4 / nf - 4.0 * delta * p3 + 6.0 * delta * delta * p2 - 3.0 * delta.powi(4),
    })
}

/// Mean, standard deviation (n-1 denominator), skewness and excess kurtosis
/// of `xs`. Needs at least 4 samples and non-zero variance.
pub fn moment_vector(xs: &[f64]) -> Result<MomentVector> {
    let n = xs.len();
    if n < 4 {
        return Err(Error::TooFewSamples { n, min: 4 });
    }
    let c = central_moments(xs)?;
    // see standardize: the equality scan catches constants whose mean does
    // not round exactly, where m2 is rounding residue of arbitrary sign
    if c.m2 <= 0.0 || xs.iter().all(|&x| x == xs[0]) {
        return Err(Error::DegenerateDistribution {
            context: "moment_vector: constant input".into(),
        });
    }
    let nf = n as f64;
    Ok(MomentVector {
        mean: c.mean,
        std: (c.m2 * nf / (nf - 1.0)).sqrt(),
        skewness: c.m3 / c.m2.powf(1.5),
        exkurtosis: c.m4 / (c.m2 * c.m2) - 3.0,
    })
}

/// Shift and scale `xs` to zero mean and unit sample (n-1) standard
/// deviation, preserving length and order.
pub fn standardize(xs: &[f64]) -> Result<Vec<f64>> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::TooFewSamples { n, min: 2 });
    }
    let c = central_moments(xs)?;
    // The equality scan matters: for a constant value whose mean does not
    // round exactly (9.81, say) the two-pass m2 comes out around 1e-31
    // instead of 0, and dividing by it would scale pure rounding noise up
    // to unit variance.
    if c.m2 <= 0.0 || xs.iter().all(|&x| x == xs[0]) {
        return Err(Error::DegenerateDistribution {
            context: "standardize: constant input".into(),
        });
    }
    let std = (c.m2 * n as f64 / (n as f64 - 1.0)).sqrt();
    Ok(xs.iter().map(|&x| (x - c.mean) / std).collect())
}

/// Per-sample squared magnitude `ux^2 + uy^2 + uz^2` of the series.
///
/// With `standardize_axes` set (the default throughout the fatigue pipeline)
/// each axis is standardized over the whole input first, so that at rest —
/// uncorrelated Gaussian axis noise — the output follows a chi-square(3)
/// distribution. Raw mode keeps the axis values as recorded and is what the
/// activity-clustering features use, since raw variance is what separates
/// movement intensities.
pub fn squared_magnitude_series(series: &Series, standardize_axes: bool) -> Result<Vec<f64>> {
    let n = series.len();
    if n < 4 {
        return Err(Error::TooFewSamples { n, min: 4 });
    }
    let axis = |f: fn(&crate::ingest::Sample) -> f64| -> Vec<f64> {
        series.samples().iter().map(f).collect()
    };
    let (ux, uy, uz) = if standardize_axes {
        let sx = standardize(&axis(|s| s.ax)).map_err(degenerate_axis("ax"))?;
        let sy = standardize(&axis(|s| s.ay)).map_err(degenerate_axis("ay"))?;
        let sz = standardize(&axis(|s| s.az)).map_err(degenerate_axis("az"))?;
        (sx, sy, sz)
    } else {
        (axis(|s| s.ax), axis(|s| s.ay), axis(|s| s.az))
    };
    Ok((0..n)
        .map(|i| ux[i] * ux[i] + uy[i] * uy[i] + uz[i] * uz[i])
        .collect())
}

fn degenerate_axis(name: &'static str) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::DegenerateDistribution { .. } => Error::DegenerateDistribution {
            context: format!("squared_magnitude_series: constant {name} axis"),
        },
        other => other,
    }
}
