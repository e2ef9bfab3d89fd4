//! Harness library behind the `cliffosc` binary: experiment configuration,
//! convergence runs, verification suites, and report emission.

pub mod config;
pub mod emit;
pub mod run;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("emit error: {0}")]
    Emit(String),
    #[error(transparent)]
    Core(#[from] cliffosc::Error),
}

pub use config::{ExperimentConfig, ProfileSource, SettingKind, TargetKind};
pub use emit::{emit, rows_to_csv, rows_to_json, EmitFormat};
pub use run::{run_convergence, ConvergenceRow};
pub use verify::{run_suite, Check, Suite};
