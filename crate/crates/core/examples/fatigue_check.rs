//! Minimal end-to-end run: simulate a rest recording, bootstrap its
//! standardized squared magnitude and confirm it sits on the rest baseline.

use triax_core::bootstrap::{bootstrap_cloud, fatigue_distance, rest_reference, BootstrapConfig};
use triax_core::moments::squared_magnitude_series;
use triax_core::simulate::{generate, SimSpec, State};

fn main() -> triax_core::Result<()> {
    let spec = SimSpec::new(State::Rest, 600_000, 100.0, 7);
    let series = generate(&spec)?;
    let mag2 = squared_magnitude_series(&series, true)?;
    let cloud = bootstrap_cloud(&mag2, &BootstrapConfig::default())?;
    let d = fatigue_distance(&cloud.summary, &rest_reference(3)?);
    println!(
        "rest distance {d:.4}, elongation {:.1}",
        cloud.summary.elongation
    );
    assert!(d < 0.5);
    Ok(())
}
