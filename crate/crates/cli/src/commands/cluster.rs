//! `triax cluster`: k-means activity tiers over per-window moment features
//! from one or more recordings.
//!
//! Three outputs: a CSV of window assignments, a JSON model dump
//! (centroids in raw feature units, standardized-space inertia, tier map)
//! and optionally two feature-scatter SVGs colored by cluster. With the
//! default k = 3 and a std feature present, clusters are ordered by
//! centroid std into active / moderate / passive tiers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use triax_core::cluster::{
    kmeans, tier_labels, window_features, ClusterModel, FeatureVector, Moment, Tier,
    DEFAULT_FEATURES, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use triax_core::plot::{scatter_svg, AxisLabels, ScatterGroup};

use crate::args::{ClusterArgs, FormatArg};
use crate::common::{
    load_series, parse_duration_ms, resolve, write_file, CliError, LoadedSeries, Sink,
};
use crate::config::ClusterFile;
use crate::jsonfmt;
use crate::meta::Meta;

#[derive(Debug, Serialize)]
struct Resolved {
    inputs: Vec<PathBuf>,
    format: Option<FormatArg>,
    window_ms: i64,
    min_samples: usize,
    k: usize,
    seed: u64,
    max_iter: usize,
    tol: f64,
    features: Vec<Moment>,
    output: PathBuf,
    model: PathBuf,
    svg: Option<PathBuf>,
}

#[derive(Serialize)]
struct ModelDump<'a> {
    features: &'a [Moment],
    model: &'a ClusterModel,
    meta: &'a Meta,
}

pub fn run(args: &ClusterArgs, file: &ClusterFile) -> Result<(), CliError> {
    let window = resolve(args.window.as_ref(), file.window.as_ref(), "60s".into());
    let features = match args.features.as_ref().or(file.features.as_ref()) {
        Some(list) => parse_features(list)?,
        None => DEFAULT_FEATURES.to_vec(),
    };
    let output = args
        .output
        .clone()
        .or_else(|| file.output.clone())
        .ok_or_else(|| {
            CliError::Config("cluster needs an output path (-o or config file)".into())
        })?;
    let model_path = args
        .model
        .clone()
        .or_else(|| file.model.clone())
        .unwrap_or_else(|| sibling(&output, ".model.json"));
    let resolved = Resolved {
        inputs: args.inputs.clone(),
        format: args.format.or(file.format),
        window_ms: parse_duration_ms(&window)?,
        min_samples: resolve(args.min_samples.as_ref(), file.min_samples.as_ref(), 4),
        k: resolve(args.k.as_ref(), file.k.as_ref(), 3),
        seed: resolve(args.seed.as_ref(), file.seed.as_ref(), 0),
        max_iter: resolve(
            args.max_iter.as_ref(),
            file.max_iter.as_ref(),
            DEFAULT_MAX_ITER,
        ),
        tol: resolve(args.tol.as_ref(), file.tol.as_ref(), DEFAULT_TOL),
        features,
        output,
        model: model_path,
        svg: args.svg.clone().or_else(|| file.svg.clone()),
    };

    let inputs: Vec<LoadedSeries> = resolved
        .inputs
        .iter()
        .map(|p| load_series(p, resolved.format))
        .collect::<Result<_, _>>()?;
    let meta = Meta::new("cluster", &resolved, &inputs.iter().collect::<Vec<_>>())?;

    // features per window, remembering which file each window came from;
    // the full moment set is extracted alongside for the scatter plots
    let all_moments = [
        Moment::Mean,
        Moment::Std,
        Moment::Skewness,
        Moment::Exkurtosis,
    ];
    let mut features: Vec<FeatureVector> = Vec::new();
    let mut plot_points: Vec<FeatureVector> = Vec::new();
    let mut sources: Vec<&Path> = Vec::new();
    for loaded in &inputs {
        let fs = window_features(
            &loaded.series,
            resolved.window_ms,
            resolved.min_samples.max(4),
            &resolved.features,
        )?;
        let ps = window_features(
            &loaded.series,
            resolved.window_ms,
            resolved.min_samples.max(4),
            &all_moments,
        )?;
        sources.extend(std::iter::repeat(loaded.path.as_path()).take(fs.len()));
        features.extend(fs);
        plot_points.extend(ps);
    }
    if features.is_empty() {
        return Err(triax_core::Error::EmptyInput.into());
    }

    let mut model = kmeans(
        &features,
        resolved.k,
        resolved.seed,
        resolved.max_iter,
        resolved.tol,
    )?;

    // tier ordering applies to the default three-tier setting
    let std_component = resolved.features.iter().position(|m| *m == Moment::Std);
    let tiers: Option<Vec<Tier>> = match (resolved.k, std_component) {
        (3, Some(idx)) => {
            let t = tier_labels(&model, idx)?;
            model.tier_map = Some(t.clone());
            Some(t)
        }
        _ => None,
    };

    // assignments CSV
    let mut csv = String::from("window_start_ms,source_file,cluster,tier\n");
    for (i, f) in features.iter().enumerate() {
        let cluster = model.assignments[i];
        let tier = tiers
            .as_ref()
            .map(|t| t[cluster].label())
            .unwrap_or_default();
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            f.window_id,
            sources[i].display(),
            cluster,
            tier
        );
    }
    Sink::new(Some(&resolved.output)).write(csv.as_bytes())?;
    meta.write_sidecar(&resolved.output)?;

    // model dump
    let dump = ModelDump {
        features: &resolved.features,
        model: &model,
        meta: &meta,
    };
    write_file(&resolved.model, &jsonfmt::to_json_bytes(&dump)?)?;

    if let Some(prefix) = &resolved.svg {
        write_projections(prefix, &plot_points, &model, tiers.as_deref(), &meta)?;
    }
    Ok(())
}

fn parse_features(list: &str) -> Result<Vec<Moment>, CliError> {
    let mut out = Vec::new();
    for name in list.split(',') {
        out.push(match name.trim() {
            "mean" => Moment::Mean,
            "std" => Moment::Std,
            "skewness" => Moment::Skewness,
            "exkurtosis" => Moment::Exkurtosis,
            other => {
                return Err(CliError::Config(format!(
                    "unknown feature '{other}' (expected mean, std, skewness, exkurtosis)"
                )))
            }
        });
    }
    Ok(out)
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    path.with_file_name(name)
}

/// Two fixed projections of the full moment set, points colored by cluster:
/// std-mean and skewness-exkurtosis.
fn write_projections(
    prefix: &Path,
    plot_points: &[FeatureVector],
    model: &ClusterModel,
    tiers: Option<&[Tier]>,
    meta: &Meta,
) -> Result<(), CliError> {
    // plot feature order: mean, std, skewness, exkurtosis
    let views = [
        ("std_mean", 1, 0, "std of mag2", "mean of mag2"),
        (
            "skew_exkurt",
            2,
            3,
            "skewness of mag2",
            "excess kurtosis of mag2",
        ),
    ];
    for (stem, xi, yi, xl, yl) in views {
        let mut groups: Vec<Vec<(f64, f64)>> = vec![Vec::new(); model.k];
        for (i, f) in plot_points.iter().enumerate() {
            groups[model.assignments[i]].push((f.features[xi], f.features[yi]));
        }
        let names: Vec<String> = (0..model.k)
            .map(|c| match tiers {
                Some(t) => format!("{} (cluster {c})", t[c].label()),
                None => format!("cluster {c}"),
            })
            .collect();
        let scatter: Vec<ScatterGroup> = groups
            .iter()
            .zip(&names)
            .map(|(points, name)| ScatterGroup { name, points })
            .collect();
        let svg = scatter_svg(
            &scatter,
            &AxisLabels {
                title: "window moment features by cluster",
                x: xl,
                y: yl,
            },
        )?;
        let mut name = prefix.file_name().unwrap_or_default().to_os_string();
        name.push(format!("_{stem}.svg"));
        let path = prefix.with_file_name(name);
        write_file(&path, svg.as_bytes())?;
        meta.write_sidecar(&path)?;
    }
    Ok(())
}
