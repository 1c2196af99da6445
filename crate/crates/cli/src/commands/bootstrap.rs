//! `triax bootstrap`: full moment cloud of one scalar channel, including
//! the per-resample point list.

use std::path::PathBuf;

use serde::Serialize;
use triax_core::bootstrap::{
    bootstrap_cloud, fatigue_distance, rest_reference, CloudPoint, CloudSummary, RestReference,
};

use crate::args::{BootstrapArgs, FormatArg};
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
    output: Option<PathBuf>,
    svg: Option<PathBuf>,
}

/// Report layout: the fatigue-report fields first, then the point list.
#[derive(Serialize)]
struct Report<'a> {
    reference: &'a RestReference,
    cloud: &'a CloudSummary,
    distance: f64,
    channel: &'a str,
    points: &'a [CloudPoint],
    meta: &'a Meta,
}

pub fn run(args: &BootstrapArgs, file: &CloudFile) -> Result<(), CliError> {
    let resolved = Resolved {
        input: args.input.clone(),
        format: args.format.or(file.format),
        cloud: resolve_cloud(&args.cloud, file),
        output: args.output.clone().or_else(|| file.output.clone()),
        svg: args.svg.clone().or_else(|| file.svg.clone()),
    };

    let input = load_series(&resolved.input, resolved.format)?;
    let meta = Meta::new("bootstrap", &resolved, &[&input])?;

    let xs = extract_channel(&input.series, resolved.cloud.channel)?;
    let cloud = bootstrap_cloud(&xs, &resolved.cloud.core_config())?;
    let reference = rest_reference(resolved.cloud.k)?;
    let report = Report {
        reference: &reference,
        cloud: &cloud.summary,
        distance: fatigue_distance(&cloud.summary, &reference),
        channel: channel_name(resolved.cloud.channel),
        points: &cloud.points,
        meta: &meta,
    };

    Sink::new(resolved.output.as_deref()).write(&jsonfmt::to_json_bytes(&report)?)?;
    if let Some(svg) = &resolved.svg {
        write_cloud_svg(svg, &cloud.points, &reference, &meta)?;
    }
    Ok(())
}
