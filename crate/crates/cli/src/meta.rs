//! Reproducibility metadata attached to every output.
//!
//! JSON reports embed the block under a `meta` key; CSV and SVG outputs
//! get a `<output>.meta.json` sidecar instead. The block carries the tool
//! version, the fully resolved configuration and the SHA-256 digest of
//! every input file, which together pin down an exact rerun. The resolved
//! configuration is additionally echoed to standard error so interactive
//! runs can confirm what the precedence chain settled on.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::common::{write_file, CliError, LoadedSeries};
use crate::jsonfmt;

pub const TOOL: &str = "triax";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    /// The fully resolved option set (defaults, config file and flags
    /// merged), echoed verbatim.
    pub config: Value,
    pub inputs: Vec<InputDigest>,
}

impl Meta {
    /// Build the block and echo the resolved config to standard error.
    pub fn new<C: Serialize>(
        subcommand: &'static str,
        config: &C,
        inputs: &[&LoadedSeries],
    ) -> Result<Self, CliError> {
        let config = serde_json::to_value(config)
            .map_err(|e| CliError::Config(format!("cannot serialize resolved config: {e}")))?;
        eprintln!("{TOOL} {subcommand}: resolved config {config}");
        Ok(Meta {
            tool: TOOL,
            version: VERSION,
            subcommand,
            config,
            inputs: inputs
                .iter()
                .map(|l| InputDigest {
                    path: l.path.display().to_string(),
                    sha256: l.sha256.clone(),
                })
                .collect(),
        })
    }

    /// Write the sidecar `<output>.meta.json` for a non-JSON output file.
    pub fn write_sidecar(&self, output: &Path) -> Result<(), CliError> {
        let mut name = output.file_name().unwrap_or_default().to_os_string();
        name.push(".meta.json");
        let path: PathBuf = output.with_file_name(name);
        write_file(&path, &jsonfmt::to_json_bytes(self)?)
    }
}
