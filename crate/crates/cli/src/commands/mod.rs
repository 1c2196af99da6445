//! One module per subcommand. Each `run` resolves its options against the
//! config-file section, executes the core pipeline and writes outputs plus
//! metadata.

pub mod bootstrap;
pub mod cloud;
pub mod cluster;
pub mod fatigue;
pub mod moments;
pub mod simulate;
pub mod spectrogram;
