//! Check outcomes and suite reports.
//!
//! Rationals serialize as `"p/q"` strings so nothing is lost to rounding;
//! non-finite reals serialize as `"inf"`, `"-inf"` or `"nan"`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, parse_rational, to_f64};

/// Relative tolerance for non-strict floating inequalities.
pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-9;

/// An exact or floating quantity (parameter value, margin, witness value).
#[derive(Debug, Clone)]
pub enum Quantity {
    Integer(i64),
    Real(f64),
    Exact(BigRational),
}

pub type ParamValue = Quantity;
pub type Params = BTreeMap<String, ParamValue>;

impl Quantity {
    pub fn as_f64(&self) -> f64 {
        match self {
            Quantity::Integer(n) => *n as f64,
            Quantity::Real(x) => *x,
            Quantity::Exact(r) => to_f64(r),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Quantity::Integer(_) => 0,
            Quantity::Exact(_) => 1,
            Quantity::Real(_) => 2,
        }
    }

    /// Numeric comparison across representations; ties broken by representation.
    pub fn numeric_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Quantity::Exact(a), Quantity::Exact(b)) => a.cmp(b),
            (Quantity::Integer(a), Quantity::Integer(b)) => a.cmp(b),
            _ => self.as_f64().total_cmp(&other.as_f64()),
        }
    }
}

impl PartialEq for Quantity {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Quantity {}

impl PartialOrd for Quantity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quantity {
    fn cmp(&self, other: &Self) -> Ordering {
        self.numeric_cmp(other)
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| match (self, other) {
                (Quantity::Real(a), Quantity::Real(b)) => a.to_bits().cmp(&b.to_bits()),
                (Quantity::Exact(a), Quantity::Exact(b)) => a.cmp(b),
                _ => Ordering::Equal,
            })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Integer(n) => write!(f, "{n}"),
            Quantity::Real(x) => f.write_str(&format_real(*x)),
            Quantity::Exact(r) => f.write_str(&format_rational(r)),
        }
    }
}

/// Shortest round-trip decimal, always with a fractional part or exponent.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:?}");
    if s.contains(['.', 'e', 'E']) {
        s
    } else {
        format!("{s}.0")
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Quantity::Integer(n) => s.serialize_i64(*n),
            Quantity::Real(x) if x.is_finite() => s.serialize_f64(*x),
            Quantity::Real(x) => s.serialize_str(&format_real(*x)),
            Quantity::Exact(r) => s.serialize_str(&format_rational(r)),
        }
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Num(f64),
            Str(String),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Int(n) => Quantity::Integer(n),
            Raw::Num(x) => Quantity::Real(x),
            Raw::Str(s) => match s.as_str() {
                "inf" => Quantity::Real(f64::INFINITY),
                "-inf" => Quantity::Real(f64::NEG_INFINITY),
                "nan" => Quantity::Real(f64::NAN),
                _ => Quantity::Exact(parse_rational(&s).map_err(de::Error::custom)?),
            },
        })
    }
}

impl From<BigRational> for Quantity {
    fn from(r: BigRational) -> Self {
        Quantity::Exact(r)
    }
}

impl From<f64> for Quantity {
    fn from(x: f64) -> Self {
        Quantity::Real(x)
    }
}

impl From<i64> for Quantity {
    fn from(n: i64) -> Self {
        Quantity::Integer(n)
    }
}

impl From<usize> for Quantity {
    fn from(n: usize) -> Self {
        Quantity::Integer(n as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    HypothesisViolation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::HypothesisViolation => "hypothesis_violation",
        })
    }
}

/// The witness attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: Params,
    pub value: Quantity,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub params: Params,
    pub status: Status,
    pub margin: Option<Quantity>,
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub fn new(check_id: impl Into<String>, params: Params, status: Status, margin: Option<Quantity>) -> Self {
        Self {
            check_id: check_id.into(),
            params,
            status,
            margin,
            counterexample: None,
        }
    }

    pub fn pass(check_id: impl Into<String>, params: Params, margin: impl Into<Quantity>) -> Self {
        Self::new(check_id, params, Status::Pass, Some(margin.into()))
    }

    /// A failure; the counterexample carries the same parameters.
    pub fn fail(
        check_id: impl Into<String>,
        params: Params,
        value: impl Into<Quantity>,
        detail: impl Into<String>,
    ) -> Self {
        let value = value.into();
        Self {
            check_id: check_id.into(),
            counterexample: Some(Counterexample {
                params: params.clone(),
                value: value.clone(),
                detail: detail.into(),
            }),
            params,
            status: Status::Fail,
            margin: Some(value),
        }
    }

    pub fn skipped(check_id: impl Into<String>, params: Params) -> Self {
        Self::new(check_id, params, Status::Skipped, None)
    }

    pub fn hypothesis_violation(check_id: impl Into<String>, params: Params) -> Self {
        Self::new(check_id, params, Status::HypothesisViolation, None)
    }

    /// Verdict for a floating inequality whose relative `margin` should be positive.
    ///
    /// Strict checks need `margin > 0`; non-strict ones accept `margin ≥ −tol`.
    /// A NaN margin always fails.
    pub fn from_margin(
        check_id: impl Into<String>,
        params: Params,
        margin: f64,
        strict: bool,
        tolerance: f64,
        detail: impl FnOnce() -> String,
    ) -> Self {
        let ok = if strict { margin > 0.0 } else { margin >= -tolerance };
        if ok {
            Self::pass(check_id, params, margin)
        } else {
            Self::fail(check_id, params, margin, detail())
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_param(mut self, name: &str, value: impl Into<Quantity>) -> Self {
        self.params.insert(name.to_string(), value.into());
        self
    }
}

/// Relative gap `(larger − smaller)/max(|larger|, |smaller|)`.
///
/// An infinite bound on the correct side counts as fully satisfied (gap 1).
pub fn relative_gap(smaller: f64, larger: f64) -> f64 {
    if larger == f64::INFINITY && smaller.is_finite() || smaller == f64::NEG_INFINITY && larger.is_finite() {
        return 1.0;
    }
    let scale = smaller.abs().max(larger.abs());
    if scale == 0.0 {
        0.0
    } else {
        (larger - smaller) / scale
    }
}

/// Tally of statuses plus the smallest reported margin.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub hypothesis_violation: usize,
    pub min_margin: Option<Extremum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremum {
    pub check_id: String,
    pub params: Params,
    pub value: Quantity,
}

impl Summary {
    pub fn of(results: &[CheckResult]) -> Self {
        let mut s = Summary {
            total: results.len(),
            ..Default::default()
        };
        for r in results {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::HypothesisViolation => s.hypothesis_violation += 1,
            }
            if let Some(m) = &r.margin {
                let smaller = match &s.min_margin {
                    None => true,
                    Some(e) => m.numeric_cmp(&e.value) == Ordering::Less,
                };
                if smaller {
                    s.min_margin = Some(Extremum {
                        check_id: r.check_id.clone(),
                        params: r.params.clone(),
                        value: m.clone(),
                    });
                }
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub timestamp: String,
    pub config_digest: String,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl SuiteReport {
    /// Sorts results canonically and recomputes the summary.
    pub fn new(
        suite: impl Into<String>,
        timestamp: impl Into<String>,
        config_digest: impl Into<String>,
        mut results: Vec<CheckResult>,
    ) -> Self {
        results.sort();
        let summary = Summary::of(&results);
        Self {
            suite: suite.into(),
            timestamp: timestamp.into(),
            config_digest: config_digest.into(),
            results,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Builds a parameter map from `(name, value)` pairs.
#[macro_export]
macro_rules! params {
    ($($name:literal => $value:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = $crate::report::Params::new();
        $( m.insert($name.to_string(), $crate::report::Quantity::from($value)); )*
        m
    }};
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rational_margin_serializes_as_fraction() {
        let r = CheckResult::pass("x", params! {"m" => 2_i64}, rat(1, 3));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"margin\":\"1/3\""), "{json}");
        assert!(json.contains("\"status\":\"pass\""));
        let back: CheckResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn reals_keep_their_type() {
        let r = CheckResult::pass("x", params! {"x" => 2.0_f64, "k" => 2_i64}, f64::INFINITY);
        let back: CheckResult = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(matches!(back.params["x"], Quantity::Real(_)));
        assert!(matches!(back.params["k"], Quantity::Integer(2)));
    }

    #[test]
    fn failure_carries_counterexample() {
        let r = CheckResult::from_margin("t", Params::new(), -0.5, true, 1e-9, || "negative".into());
        assert_eq!(r.status, Status::Fail);
        assert!(r.counterexample.is_some());
        let ok = CheckResult::from_margin("t", Params::new(), -1e-12, false, 1e-9, String::new);
        assert!(ok.is_pass());
    }

    #[test]
    fn summary_counts_and_minimum() {
        let rs = vec![
            CheckResult::pass("a", Params::new(), 0.5),
            CheckResult::pass("b", Params::new(), rat(1, 10)),
            CheckResult::skipped("c", Params::new()),
        ];
        let s = Summary::of(&rs);
        assert_eq!((s.total, s.pass, s.skipped), (3, 2, 1));
        assert_eq!(s.min_margin.unwrap().check_id, "b");
    }

    #[test]
    fn infinite_bound_counts_as_satisfied() {
        assert_eq!(relative_gap(3.0, f64::INFINITY), 1.0);
        assert_eq!(relative_gap(1.0, 2.0), 0.5);
    }
}
