//! `triax fatigue`: distance of a recording's moment cloud from the rest
//! reference.
//!
//! The reference defaults to the analytic chi-square(k) point. With
//! `--baseline` the centroid of a measured rest recording's cloud (same
//! bootstrap options) replaces the analytic coordinates, for wearers whose
//! rest state is known to sit off the ideal position; `k` is kept in the
//! report for bookkeeping.

use std::path::PathBuf;

use serde::Serialize;
use triax_core::bootstrap::{
    bootstrap_cloud, fatigue_distance, rest_reference, CloudSummary, RestReference,
};

use crate::args::{FatigueArgs, FormatArg};
use crate::commands::cloud::{
    channel_name, extract_channel, resolve_cloud, write_cloud_svg, ResolvedCloud,
};
use crate::common::{load_series, CliError, Sink};
use crate::config::CloudFile;
use crate::jsonfmt;
use crate::meta::Meta;

#[derive(Debug, Serialize)]
struct Resolved {
    input: PathBuf,
    format: Option<FormatArg>,
    #[serde(flatten)]
    cloud: ResolvedCloud,
    baseline: Option<PathBuf>,
    output: Option<PathBuf>,
    svg: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report<'a> {
    reference: &'a RestReference,
    cloud: &'a CloudSummary,
    distance: f64,
    channel: &'a str,
    meta: &'a Meta,
}

pub fn run(args: &FatigueArgs, file: &CloudFile) -> Result<(), CliError> {
    let resolved = Resolved {
        input: args.input.clone(),
        format: args.format.or(file.format),
        cloud: resolve_cloud(&args.cloud, file),
        baseline: args.baseline.clone().or_else(|| file.baseline.clone()),
        output: args.output.clone().or_else(|| file.output.clone()),
        svg: args.svg.clone().or_else(|| file.svg.clone()),
    };

    let input = load_series(&resolved.input, resolved.format)?;
    let config = resolved.cloud.core_config();

    let baseline = match &resolved.baseline {
        Some(path) => Some(load_series(path, resolved.format)?),
        None => None,
    };
    let mut inputs = vec![&input];
    if let Some(b) = &baseline {
        inputs.push(b);
    }
    let meta = Meta::new("fatigue", &resolved, &inputs)?;

    // validate k up front even when a baseline replaces the analytic point
    let analytic = rest_reference(resolved.cloud.k)?;
    let reference = match &baseline {
        Some(b) => {
            let xs = extract_channel(&b.series, resolved.cloud.channel)?;
            let centroid = bootstrap_cloud(&xs, &config)?.summary.centroid;
            RestReference {
                skewness: centroid.skewness,
                exkurtosis: centroid.exkurtosis,
                k: analytic.k,
            }
        }
        None => analytic,
    };

    let xs = extract_channel(&input.series, resolved.cloud.channel)?;
    let cloud = bootstrap_cloud(&xs, &config)?;
    let report = Report {
        reference: &reference,
        cloud: &cloud.summary,
        distance: fatigue_distance(&cloud.summary, &reference),
        channel: channel_name(resolved.cloud.channel),
        meta: &meta,
    };

    Sink::new(resolved.output.as_deref()).write(&jsonfmt::to_json_bytes(&report)?)?;
    if let Some(svg) = &resolved.svg {
        write_cloud_svg(svg, &cloud.points, &reference, &meta)?;
    }
    Ok(())
}
