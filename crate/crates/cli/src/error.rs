//! Failure classification and the process exit-code contract.

use std::path::PathBuf;

/// A classified command failure.
///
/// The discriminant fixes the exit code so scripts can tell failure classes
/// apart: 2 for configuration or domain problems, 3 for I/O, 4 for a failed
/// optimization, 5 for a self-check breach. Exit code 0 is success; clap
/// reports usage errors with its own exit code 2, which coincides with the
/// configuration class on purpose.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad configuration file, command-line value, or environment variable.
    #[error("configuration error: {0}")]
    Config(String),
    /// A computation rejected its inputs.
    #[error("domain error: {0}")]
    Domain(#[from] phonon_thermo_core::Error),
    /// Reading or writing an artifact failed.
    #[error("i/o error on {}: {source}", path.display())]
    Io {
        /// Path of the file or directory involved.
        path: PathBuf,
        /// Underlying system error.
        source: std::io::Error,
    },
    /// The requested maximization did not produce a usable optimum.
    #[error("optimization failed: {0}")]
    Optimize(String),
    /// The self-check battery breached a documented tolerance.
    #[error("validation failed: {0}")]
    Validation(String),
}

impl CliError {
    /// Stable exit code for this failure class.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Domain(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Optimize(_) => 4,
            CliError::Validation(_) => 5,
        }
    }
}

/// Command-level result.
pub type Result<T> = std::result::Result<T, CliError>;

/// Adapter binding an I/O error to the path it occurred on.
pub fn io_error(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
