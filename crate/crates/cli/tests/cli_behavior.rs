//! End-to-end behavior of the `triax` binary: exit codes, diagnostic
//! format, option precedence and the shapes of emitted files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn triax(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triax"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// The one-line diagnostic: the last stderr line (earlier ones are config
/// echoes).
fn error_line(out: &Output) -> String {
    stderr_of(out)
        .lines()
        .last()
        .unwrap_or_default()
        .to_string()
}

#[test]
fn unknown_subcommand_exits_2_and_names_the_valid_ones() {
    let dir = tempfile::tempdir().unwrap();
    let out = triax(dir.path(), &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let line = error_line(&out);
    assert!(line.starts_with("ERROR ConfigInvalid:"), "{line}");
    for name in [
        "simulate",
        "moments",
        "bootstrap",
        "fatigue",
        "cluster",
        "spectrogram",
    ] {
        assert!(line.contains(name), "{line} missing {name}");
    }
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_input_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = triax(dir.path(), &["moments", "missing.csv"]);
    assert_eq!(out.status.code(), Some(1));
    let line = error_line(&out);
    assert!(line.starts_with("ERROR Io: missing.csv"), "{line}");
}

#[test]
fn help_and_version_exit_0() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["--help"][..], &["--version"][..], &["fatigue", "-h"][..]] {
        let out = triax(dir.path(), args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn simulate_then_fatigue_matches_the_documented_flow() {
    let dir = tempfile::tempdir().unwrap();
    let out = triax(
        dir.path(),
        &[
            "simulate", "--state", "rest", "--duration", "600s", "--rate", "100", "--seed", "7",
            "-o", "rest.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let csv = fs::read_to_string(dir.path().join("rest.csv")).unwrap();
    assert!(csv.starts_with("t_ms,ax,ay,az,label\n"));
    assert!(csv.lines().nth(1).unwrap().ends_with(",rest"));
    assert_eq!(csv.lines().count(), 60_001);
    assert!(dir.path().join("rest.csv.meta.json").exists());

    let out = triax(
        dir.path(),
        &["fatigue", "rest.csv", "--seed", "7", "-o", "report.json"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    let distance = report["distance"].as_f64().unwrap();
    assert!(distance < 0.5, "rest distance {distance}");
    assert_eq!(report["channel"], "mag2");
    assert_eq!(report["reference"]["k"], 3);
    assert_eq!(report["meta"]["subcommand"], "fatigue");
    assert_eq!(
        report["meta"]["inputs"][0]["sha256"]
            .as_str()
            .unwrap()
            .len(),
        64
    );
    // key order of the mirrored report fields is fixed
    let text = fs::read_to_string(dir.path().join("report.json")).unwrap();
    let order: Vec<usize> = ["\"reference\"", "\"cloud\"", "\"distance\"", "\"channel\""]
        .iter()
        .map(|k| text.find(*k).unwrap())
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]), "{order:?}");
}

#[test]
fn moments_stdout_table_has_four_channels_per_window() {
    let dir = tempfile::tempdir().unwrap();
    triax(
        dir.path(),
        &[
            "simulate", "--state", "rest", "--duration", "30s", "--seed", "3", "-o", "r.csv",
        ],
    );
    let out = triax(dir.path(), &["moments", "r.csv", "--window", "10s"]);
    assert_eq!(out.status.code(), Some(0));
    let table = stdout_of(&out);
    let mut lines = table.lines();
    assert_eq!(
        lines.next().unwrap(),
        "window_start_ms,window_end_ms,channel,mean,std,skewness,exkurtosis"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12, "3 windows x 4 channels");
    assert!(rows[0].starts_with("0,10000,x,"));
    assert!(rows[3].starts_with("0,10000,mag2,"));
    assert!(rows[4].starts_with("10000,20000,x,"));
}

#[test]
fn plain_kurtosis_renames_the_column_and_adds_3() {
    let dir = tempfile::tempdir().unwrap();
    triax(
        dir.path(),
        &[
            "simulate", "--state", "rest", "--duration", "20s", "--seed", "5", "-o", "r.csv",
        ],
    );
    let excess = stdout_of(&triax(dir.path(), &["moments", "r.csv", "--window", "20s"]));
    let plain = stdout_of(&triax(
        dir.path(),
        &["moments", "r.csv", "--window", "20s", "--plain-kurtosis"],
    ));
    assert!(excess.lines().next().unwrap().ends_with(",exkurtosis"));
    assert!(plain.lines().next().unwrap().ends_with(",kurtosis"));
    let last = |table: &str, row: usize| -> f64 {
        table
            .lines()
            .nth(row)
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    for row in 1..=4 {
        let shift = last(&plain, row) - last(&excess, row);
        assert!((shift - 3.0).abs() < 1e-12, "row {row}: {shift}");
    }
}

#[test]
fn config_file_fills_defaults_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    triax(
        dir.path(),
        &[
            "simulate", "--state", "rest", "--duration", "30s", "--seed", "1", "-o", "r.csv",
        ],
    );
    fs::write(
        dir.path().join("cfg.json"),
        r#"{"bootstrap": {"resamples": 64, "seed": 9}}"#,
    )
    .unwrap();
    let out = triax(
        dir.path(),
        &[
            "bootstrap", "r.csv", "--config", "cfg.json", "--seed", "2", "-o", "b.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("b.json")).unwrap()).unwrap();
    // resamples from the file, seed from the flag
    assert_eq!(report["meta"]["config"]["resamples"], 64);
    assert_eq!(report["meta"]["config"]["seed"], 2);
    assert_eq!(report["points"].as_array().unwrap().len(), 64);
    assert_eq!(report["cloud"]["resamples"], 64);
}

#[test]
fn bad_config_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("cfg.json"), r#"{"typo_section": {}}"#).unwrap();
    for cfg in ["cfg.json", "nonexistent.json"] {
        let out = triax(dir.path(), &["simulate", "--config", cfg, "-o", "x.csv"]);
        assert_eq!(out.status.code(), Some(2), "{cfg}");
        assert!(error_line(&out).starts_with("ERROR ConfigInvalid:"));
    }
}

#[test]
fn malformed_and_degenerate_inputs_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.csv"), "t_ms,ax,ay,az\n0,1,2\n").unwrap();
    let out = triax(dir.path(), &["moments", "bad.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(error_line(&out).starts_with("ERROR MalformedRow:"));

    // constant z axis cannot be standardized
    let mut constant = String::from("t_ms,ax,ay,az\n");
    for i in 0..100 {
        constant.push_str(&format!("{},0.{},0.0{}, 9.81\n", i * 10, i % 7, i % 5));
    }
    fs::write(dir.path().join("flat.csv"), constant).unwrap();
    let out = triax(dir.path(), &["fatigue", "flat.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        error_line(&out).starts_with("ERROR DegenerateDistribution:"),
        "{}",
        error_line(&out)
    );
}

#[test]
fn invalid_options_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    triax(
        dir.path(),
        &[
            "simulate", "--state", "rest", "--duration", "10s", "-o", "r.csv",
        ],
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["simulate", "--duration", "0s", "-o", "x.csv"],
        vec!["simulate", "--rate=2000", "-o", "x.csv"],
        vec!["fatigue", "r.csv", "--fraction", "0"],
        vec!["fatigue", "r.csv", "--k", "0"],
        vec!["spectrogram", "r.csv", "--band", "junk", "-o", "s.csv"],
        vec!["spectrogram", "r.csv", "--overlap", "1.0", "-o", "s.csv"],
        vec!["cluster", "r.csv"], // no output path anywhere
    ];
    for args in &cases {
        let out = triax(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", error_line(&out));
        assert!(error_line(&out).starts_with("ERROR ConfigInvalid:"), "{args:?}");
    }
}

#[test]
fn band_beyond_nyquist_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    triax(
        dir.path(),
        &[
            "simulate", "--state", "rest", "--duration", "60s", "--rate", "100", "-o", "r.csv",
        ],
    );
    let out = triax(
        dir.path(),
        &[
            "spectrogram", "r.csv", "--segment", "10s", "--band", "0.5:80", "-o", "s.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(error_line(&out).starts_with("ERROR BandOutOfRange:"));
}

#[test]
fn cluster_emits_assignments_model_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    for (state, seed) in [("active", "1"), ("moderate", "2"), ("passive", "3")] {
        triax(
            dir.path(),
            &[
                "simulate", "--state", state, "--duration", "120s", "--rate", "200", "--seed",
                seed, "-o", &format!("{state}.csv"),
            ],
        );
    }
    let out = triax(
        dir.path(),
        &[
            "cluster",
            "active.csv",
            "moderate.csv",
            "passive.csv",
            "--window",
            "30s",
            "-o",
            "assign.csv",
            "--svg",
            "proj",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let csv = fs::read_to_string(dir.path().join("assign.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "window_start_ms,source_file,cluster,tier"
    );
    assert_eq!(csv.lines().count(), 13, "3 files x 4 windows + header");
    assert!(csv.contains("active.csv"));

    let model: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("assign.csv.model.json")).unwrap())
            .unwrap();
    assert_eq!(model["model"]["k"], 3);
    assert_eq!(model["model"]["assignments"].as_array().unwrap().len(), 12);
    assert_eq!(model["features"].as_array().unwrap().len(), 3);

    for plot in ["proj_std_mean.svg", "proj_skew_exkurt.svg"] {
        let svg = fs::read_to_string(dir.path().join(plot)).unwrap();
        assert!(svg.starts_with("<?xml"), "{plot}");
        assert!(svg.contains("<svg"), "{plot}");
        assert!(dir.path().join(format!("{plot}.meta.json")).exists());
    }
}

#[test]
fn spectrogram_matrix_aligns_times_and_frequencies() {
    let dir = tempfile::tempdir().unwrap();
    triax(
        dir.path(),
        &[
            "simulate", "--state", "fatigue", "--duration", "60s", "--rate", "100", "--seed",
            "4", "-o", "f.csv",
        ],
    );
    let out = triax(
        dir.path(),
        &[
            "spectrogram", "f.csv", "--segment", "10s", "--overlap", "0", "-o", "m.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let csv = fs::read_to_string(dir.path().join("m.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[0], "t_ms");
    assert_eq!(header[1], "0");
    // 1000-sample segment at 100 Hz: 501 bins, 0.1 Hz spacing
    assert_eq!(header.len(), 502);
    assert_eq!(header[501], "50");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6, "6000 samples, hop 1000");
    for (i, row) in rows.iter().enumerate() {
        assert!(row.starts_with(&format!("{},", i * 10_000)), "{row}");
        assert_eq!(row.split(',').count(), 502);
    }

    let tremor: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("m.csv.tremor.json")).unwrap())
            .unwrap();
    assert_eq!(tremor["tremor"]["band_power"].as_array().unwrap().len(), 6);
    assert_eq!(tremor["channel"], "magnitude");
}

#[test]
fn jsonl_input_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let mut jsonl = String::new();
    for i in 0..200 {
        jsonl.push_str(&format!(
            "{{\"t_ms\": {}, \"ax\": 0.{}, \"ay\": -0.0{}, \"az\": 9.{}}}\n",
            i * 10,
            (i * 37 + 11) % 97,
            (i * 53 + 7) % 89,
            800 + (i * 13) % 100
        ));
    }
    fs::write(dir.path().join("r.jsonl"), jsonl).unwrap();
    let out = triax(dir.path(), &["moments", "r.jsonl", "--window", "2s"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    assert!(stdout_of(&out).lines().count() > 1);
}
