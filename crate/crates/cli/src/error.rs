use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] recip_core::Error),
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const RESOURCE_CAP: i32 = 3;
    /// The command ran, but a verification failed or a scan found counterexamples.
    pub const FAILURES: i32 = 4;
    pub const INTERNAL: i32 = 5;
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use recip_core::Error as E;
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } | CliError::Config(_) => exit::INPUT,
            CliError::Core(E::ResourceCap(_)) => exit::RESOURCE_CAP,
            CliError::Core(E::Invariant(_)) => exit::INTERNAL,
            CliError::Core(_) => exit::INPUT,
        }
    }
}
