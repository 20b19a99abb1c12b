use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use turan_core::{CheckResult, SuiteReport};

use crate::config::{Config, Tolerances};
use crate::error::{config_err, Result, VerifyError};
use crate::suites::{ResolvedSuite, Suite, SuiteDigest};

/// Environment variable fixing the report timestamp (seconds since the epoch).
pub const SOURCE_DATE_EPOCH: &str = "SOURCE_DATE_EPOCH";

/// Suites named on the command line, else those listed under `[run]`.
pub fn select_suites(cli: &[String], config: &Config) -> Result<Vec<Suite>> {
    let names: Vec<&String> = if cli.is_empty() {
        config.run.suites.iter().flatten().collect()
    } else {
        cli.iter().collect()
    };
    let mut suites = names
        .into_iter()
        .map(|n| Suite::from_name(n.trim()))
        .collect::<Result<Vec<_>>>()?;
    suites.sort();
    suites.dedup();
    if suites.is_empty() {
        return Err(VerifyError::NoChecks);
    }
    Ok(suites)
}

#[derive(Serialize)]
struct DigestInput<'a> {
    suites: Vec<SuiteDigest>,
    max_points: usize,
    tolerances: &'a Tolerances,
}

/// SHA-256 over the resolved run description. Worker count and timestamp are excluded.
pub fn config_digest(resolved: &[ResolvedSuite], config: &Config) -> String {
    let input = DigestInput {
        suites: resolved.iter().map(ResolvedSuite::digest_view).collect(),
        max_points: config.settings.max_points,
        tolerances: &config.settings.tolerances,
    };
    let bytes = serde_json::to_vec(&input).expect("digest input serializes");
    hex::encode(Sha256::digest(bytes))
}

/// RFC 3339 timestamp, taken from `SOURCE_DATE_EPOCH` when set.
pub fn timestamp() -> Result<String> {
    let at = match std::env::var(SOURCE_DATE_EPOCH) {
        Ok(s) => {
            let secs: i64 = s
                .trim()
                .parse()
                .map_err(|_| VerifyError::Config(format!("{SOURCE_DATE_EPOCH} is not an integer: `{s}`")))?;
            match chrono::DateTime::from_timestamp(secs, 0) {
                Some(t) => t,
                None => return config_err(format!("{SOURCE_DATE_EPOCH} out of range: {secs}")),
            }
        }
        Err(_) => chrono::Utc::now(),
    };
    Ok(at.to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
}

/// Runs the selected suites; `jobs = Some(1)` evaluates serially.
pub fn run_suites(suites: &[Suite], config: &Config, jobs: Option<usize>) -> Result<SuiteReport> {
    if suites.is_empty() {
        return Err(VerifyError::NoChecks);
    }
    let resolved = suites
        .iter()
        .map(|&s| ResolvedSuite::resolve(s, config))
        .collect::<Result<Vec<_>>>()?;
    let cap = config.settings.max_points;
    let mut total = Some(0usize);
    for r in &resolved {
        total = total.zip(r.task_count()?).and_then(|(t, n)| t.checked_add(n));
    }
    match total {
        Some(0) => return Err(VerifyError::NoChecks),
        Some(n) if n <= cap => {}
        Some(n) => {
            return Err(VerifyError::Cap {
                points: n.to_string(),
                cap,
            })
        }
        None => {
            return Err(VerifyError::Cap {
                points: "more than usize::MAX".into(),
                cap,
            })
        }
    }
    let tasks: Vec<(usize, _)> = resolved
        .iter()
        .enumerate()
        .map(|(i, r)| r.tasks().map(|ts| ts.into_iter().map(move |t| (i, t))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let eval = |(i, t): &(usize, _)| resolved[*i].evaluate(t);
    let jobs = jobs.or(config.settings.jobs);
    let results: Vec<CheckResult> = if jobs == Some(1) {
        tasks.iter().flat_map(eval).collect()
    } else {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(n) = jobs {
            pool = pool.num_threads(n);
        }
        let pool = pool.build().map_err(|e| VerifyError::Pool(e.to_string()))?;
        pool.install(|| tasks.par_iter().flat_map_iter(eval).collect())
    };
    let name = suites.iter().map(|s| s.name()).collect::<Vec<_>>().join("+");
    Ok(SuiteReport::new(
        name,
        timestamp()?,
        config_digest(&resolved, config),
        results,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_selection_is_an_error() {
        let err = select_suites(&[], &Config::default()).unwrap_err();
        assert_eq!(err.to_string(), "no checks selected");
        assert!(matches!(
            run_suites(&[], &Config::default(), None),
            Err(VerifyError::NoChecks)
        ));
    }

    #[test]
    fn digest_ignores_jobs() {
        let a = Config::default();
        let mut b = Config::default();
        b.settings.jobs = Some(3);
        let ra = [ResolvedSuite::resolve(Suite::Kummer, &a).unwrap()];
        let rb = [ResolvedSuite::resolve(Suite::Kummer, &b).unwrap()];
        assert_eq!(config_digest(&ra, &a), config_digest(&rb, &b));
        let c = Config::from_toml_str("[suites.kummer.grid]\nx = [1.0]").unwrap();
        let rc = [ResolvedSuite::resolve(Suite::Kummer, &c).unwrap()];
        assert_ne!(config_digest(&ra, &a), config_digest(&rc, &c));
    }

    #[test]
    fn cap_is_enforced() {
        let c = Config::from_toml_str("[settings]\nmax_points = 10").unwrap();
        assert!(matches!(
            run_suites(&[Suite::Kummer], &c, Some(1)),
            Err(VerifyError::Cap { .. })
        ));
    }
}
