//! Grid scans over the `turan-core` checks, counterexample search and report emission.
//!
//! The `verify` binary is a thin layer over [`run_suites`] and [`emit_report`].

pub mod config;
pub mod emit;
pub mod error;
pub mod grid;
pub mod runner;
pub mod suites;

pub use config::Config;
pub use emit::{emit_report, parse_report, Format};
pub use error::{Result, VerifyError};
pub use grid::{Axis, GridSpec, Value};
pub use runner::{config_digest, run_suites, select_suites, timestamp};
pub use suites::{ResolvedSuite, Suite};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "TURAN_VERIFY_CONFIG";
