//! `triax simulate`: write a seeded synthetic recording as labeled CSV.

use std::path::PathBuf;

use serde::Serialize;
use triax_core::cluster::Tier;
use triax_core::ingest::write_series_csv;
use triax_core::simulate::{generate, SimSpec, State};

use crate::args::{SimulateArgs, StateArg};
use crate::common::{resolve, CliError, Sink};
use crate::config::SimulateFile;
use crate::meta::Meta;

#[derive(Debug, Serialize)]
struct Resolved {
    state: StateArg,
    duration_ms: i64,
    rate_hz: f64,
    seed: u64,
    output: Option<PathBuf>,
}

pub fn run(args: &SimulateArgs, file: &SimulateFile) -> Result<(), CliError> {
    let state = resolve(args.state.as_ref(), file.state.as_ref(), StateArg::Rest);
    let duration = resolve(
        args.duration.as_ref(),
        file.duration.as_ref(),
        "60s".to_string(),
    );
    let resolved = Resolved {
        state,
        duration_ms: crate::common::parse_duration_ms(&duration)?,
        rate_hz: resolve(args.rate.as_ref(), file.rate.as_ref(), 100.0),
        seed: resolve(args.seed.as_ref(), file.seed.as_ref(), 0),
        output: args.output.clone().or_else(|| file.output.clone()),
    };
    let meta = Meta::new("simulate", &resolved, &[])?;

    let spec = SimSpec::new(
        core_state(resolved.state),
        resolved.duration_ms,
        resolved.rate_hz,
        resolved.seed,
    );
    let series = generate(&spec)?;

    let mut csv = Vec::new();
    write_series_csv(&series, &mut csv)
        .map_err(|e| CliError::Config(format!("cannot format CSV: {e}")))?;
    let sink = Sink::new(resolved.output.as_deref());
    sink.write(&csv)?;
    if let Some(path) = sink.path() {
        meta.write_sidecar(path)?;
    }
    Ok(())
}

fn core_state(arg: StateArg) -> State {
    match arg {
        StateArg::Rest => State::Rest,
        StateArg::Fatigue => State::Fatigue,
        StateArg::Active => State::Activity(Tier::Active),
        StateArg::Moderate => State::Activity(Tier::Moderate),
        StateArg::Passive => State::Activity(Tier::Passive),
    }
}
