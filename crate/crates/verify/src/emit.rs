use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use turan_core::SuiteReport;

use crate::error::{Result, VerifyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(VerifyError::UnsupportedFormat(s.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Serializes a report. Output is a pure function of the report.
pub fn emit_report(report: &SuiteReport, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).map_err(|e| VerifyError::Report(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| VerifyError::Report(e.to_string());
            w.write_record(["check_id", "params", "status", "margin"]).map_err(io)?;
            for r in &report.results {
                let params = r
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";");
                let margin = r.margin.as_ref().map(|m| m.to_string()).unwrap_or_default();
                w.write_record([r.check_id.as_str(), &params, &r.status.to_string(), &margin])
                    .map_err(io)?;
            }
            w.into_inner().map_err(|e| VerifyError::Report(e.to_string()))
        }
    }
}

/// Inverse of the JSON emitter.
pub fn parse_report(bytes: &[u8]) -> Result<SuiteReport> {
    serde_json::from_slice(bytes).map_err(|e| VerifyError::Report(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use turan_core::params;
    use turan_core::rational::rat;
    use turan_core::CheckResult;

    fn sample() -> SuiteReport {
        SuiteReport::new(
            "demo",
            "1970-01-01T00:00:00Z",
            "00",
            vec![
                CheckResult::pass("b", params! {"mu" => rat(1, 2), "m" => 3_i64}, rat(1, 3)),
                CheckResult::fail("a", params! {"x" => 0.5_f64}, -0.25_f64, "below"),
            ],
        )
    }

    #[test]
    fn json_shape_and_roundtrip() {
        let r = sample();
        let bytes = emit_report(&r, Format::Json).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.contains("\"margin\": \"1/3\""), "{text}");
        assert!(text.contains("\"status\": \"pass\""));
        assert!(text.contains("\"config_digest\""));
        assert_eq!(parse_report(&bytes).unwrap(), r);
    }

    #[test]
    fn csv_rows() {
        let text = String::from_utf8(emit_report(&sample(), Format::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "check_id,params,status,margin");
        assert_eq!(lines[1], "a,x=0.5,fail,-0.25");
        assert_eq!(lines[2], "b,m=3;mu=1/2,pass,1/3");
    }

    #[test]
    fn unknown_format() {
        assert!(matches!(
            "xml".parse::<Format>(),
            Err(VerifyError::UnsupportedFormat(_))
        ));
    }
}
