use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("config error: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unknown suite `{0}` (see `verify list-suites`)")]
    UnknownSuite(String),
    #[error("no checks selected")]
    NoChecks,
    #[error("grid has {points} points, above the cap of {cap}")]
    Cap { points: String, cap: usize },
    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),
    #[error("report parse error: {0}")]
    Report(String),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Core(#[from] turan_core::Error),
}

impl VerifyError {
    /// Process exit code for this error; every error is a config or usage problem.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub type Result<T, E = VerifyError> = std::result::Result<T, E>;

pub(crate) fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(VerifyError::Config(msg.into()))
}
