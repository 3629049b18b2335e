//! Command-line front end for `bishop-ruled`: builds a curve and its ruled
//! surfaces from a JSON config, then analyzes, meshes, grids or verifies them.

use std::io;
use std::path::PathBuf;

pub mod build;
pub mod commands;
pub mod config;
pub mod output;

pub use build::Session;
pub use config::{CurveSpec, Overrides, RunConfig};
pub use output::MeshGrid;

/// Environment variable that sets the output directory when `--out` is absent.
pub const OUT_DIR_ENV: &str = "BISHOP_RULED_OUT";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("curve error: {0}")]
    Curve(#[source] bishop_ruled::Error),
    #[error("numeric error: {0}")]
    Numeric(#[source] bishop_ruled::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0} asserted checks failed")]
    VerificationFailed(usize),
}

impl CliError {
    /// Process exit status: 1 verification or numeric failure, 2 bad config,
    /// 3 irregular curve, 4 unwritable output.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Curve(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Numeric(_) | CliError::VerificationFailed(_) => 1,
        }
    }
}
