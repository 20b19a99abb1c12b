//! Run configuration.
//!
//! ```toml
//! [settings]
//! max_points = 250000
//! jobs = 4
//!
//! [settings.tolerances]
//! residual = 1e-9
//!
//! [run]
//! suites = ["lemmas", "bessel"]
//!
//! [suites.bessel]
//! m_max = 20
//! [suites.bessel.grid]
//! nu = { min = "-1", max = "5", step = "1/2" }
//! u = [0.5, 1.0, 2.0]
//! ```
//!
//! Anything left out falls back to the suite defaults shown by `verify list-suites`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{config_err, Result, VerifyError};
use crate::suites::Suite;

pub const DEFAULT_MAX_POINTS: usize = 250_000;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub settings: Settings,
    #[serde(default)]
    pub run: RunSelection,
    #[serde(default)]
    pub suites: BTreeMap<String, SuiteOverrides>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Settings {
    /// Cap on the total number of evaluated points.
    pub max_points: usize,
    /// Worker count; absent means one per core. Not part of the config digest.
    pub jobs: Option<usize>,
    pub tolerances: Tolerances,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            max_points: DEFAULT_MAX_POINTS,
            jobs: None,
            tolerances: Tolerances::default(),
        }
    }
}

/// Tolerances applied by the suites themselves.
///
/// The inequality checks in the core crate use its module-level tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Bound on the scaled contiguous-relation residuals.
    pub residual: f64,
    /// Relative agreement with frozen oracle values.
    pub oracle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual: 1e-9,
            oracle: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSelection {
    /// Suites run when `--suite` is not given.
    pub suites: Option<Vec<String>>,
}

/// Per-suite overrides of the built-in defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteOverrides {
    pub m_max: Option<usize>,
    pub families: Option<Vec<String>>,
    #[serde(default)]
    pub grid: toml::Table,
}

impl Config {
    pub fn from_toml_str(src: &str) -> Result<Self> {
        let config: Config = toml::from_str(src)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|source| VerifyError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&src)
    }

    fn validate(&self) -> Result<()> {
        for name in self.suites.keys() {
            Suite::from_name(name)?;
        }
        if let Some(names) = &self.run.suites {
            for name in names {
                Suite::from_name(name)?;
            }
        }
        let t = self.settings.tolerances;
        if !(t.residual > 0.0 && t.oracle > 0.0) {
            return config_err("tolerances must be positive");
        }
        if self.settings.max_points == 0 {
            return config_err("max_points must be positive");
        }
        if self.settings.jobs == Some(0) {
            return config_err("jobs must be at least 1");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default() {
        assert_eq!(Config::from_toml_str("").unwrap(), Config::default());
    }

    #[test]
    fn overrides_parse() {
        let c = Config::from_toml_str(
            r#"
            [settings]
            max_points = 10
            [settings.tolerances]
            residual = 1e-8
            [suites.kummer.grid]
            a = [1.0, 2.0]
            "#,
        )
        .unwrap();
        assert_eq!(c.settings.max_points, 10);
        assert_eq!(c.settings.tolerances.residual, 1e-8);
        assert_eq!(c.settings.tolerances.oracle, 1e-9);
        assert!(c.suites["kummer"].grid.contains_key("a"));
    }

    #[test]
    fn rejects_unknowns() {
        assert!(matches!(
            Config::from_toml_str("[suites.nope]"),
            Err(VerifyError::UnknownSuite(_))
        ));
        assert!(Config::from_toml_str("[settings]\ncolour = 1").is_err());
        assert!(Config::from_toml_str("[settings]\njobs = 0").is_err());
    }
}
