//! Rectangular parameter grids.
//!
//! An axis is written either as `{ min, max, step }` or as an explicit list
//! (`[..]` or `{ values = [..] }`). Strings and integers are exact rationals
//! (`"p/q"`), TOML floats are reals; one axis may not mix the two.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use turan_core::rational::{format_rational, parse_rational, to_f64};
use turan_core::report::{format_real, Params};
use turan_core::Quantity;

use crate::error::{config_err, Result, VerifyError};

/// One grid coordinate.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Real(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Real(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Real(_) => None,
        }
    }

    pub fn to_quantity(&self) -> Quantity {
        match self {
            Value::Exact(r) if r.is_integer() => match r.to_integer().to_i64() {
                Some(n) => Quantity::Integer(n),
                None => Quantity::Exact(r.clone()),
            },
            Value::Exact(r) => Quantity::Exact(r.clone()),
            Value::Real(x) => Quantity::Real(*x),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&format_rational(r)),
            Value::Real(x) => f.write_str(&format_real(*x)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Exact,
    Real,
}

fn scalar(name: &str, v: &toml::Value) -> Result<Value> {
    match v {
        toml::Value::String(s) => parse_rational(s).map(Value::Exact).map_err(|_| {
            VerifyError::Config(format!(
                "{name}: `{s}` is not a rational; write \"p/q\" or a bare decimal"
            ))
        }),
        toml::Value::Integer(n) => Ok(Value::Exact(BigRational::from_integer(BigInt::from(*n)))),
        toml::Value::Float(x) if x.is_finite() => Ok(Value::Real(*x)),
        other => config_err(format!("{name}: expected a number or \"p/q\" string, got {other}")),
    }
}

fn kind(v: &Value) -> Kind {
    match v {
        Value::Exact(_) => Kind::Exact,
        Value::Real(_) => Kind::Real,
    }
}

/// The values of one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    values: Vec<Value>,
}

impl Axis {
    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(|v| matches!(v, Value::Exact(_)))
    }

    /// Parses an axis, refusing to materialize more than `cap` values.
    pub fn from_toml(name: &str, v: &toml::Value, cap: usize) -> Result<Self> {
        let values = match v {
            toml::Value::Array(items) => list(name, items)?,
            toml::Value::Table(t) if t.contains_key("values") => {
                if t.len() != 1 {
                    return config_err(format!("{name}: `values` cannot be combined with other keys"));
                }
                match &t["values"] {
                    toml::Value::Array(items) => list(name, items)?,
                    _ => return config_err(format!("{name}: `values` must be an array")),
                }
            }
            toml::Value::Table(t) => {
                for key in t.keys() {
                    if !matches!(key.as_str(), "min" | "max" | "step") {
                        return config_err(format!("{name}: unknown key `{key}`"));
                    }
                }
                let get = |k: &str| {
                    t.get(k)
                        .ok_or_else(|| VerifyError::Config(format!("{name}: missing `{k}`")))
                        .and_then(|v| scalar(name, v))
                };
                let (min, max) = (get("min")?, get("max")?);
                let step = match t.get("step") {
                    Some(s) => scalar(name, s)?,
                    None if min == max => min.clone(),
                    None => return config_err(format!("{name}: missing `step`")),
                };
                range(name, min, max, step, cap)?
            }
            single => vec![scalar(name, single)?],
        };
        if values.is_empty() {
            return config_err(format!("{name}: axis has no values"));
        }
        if values.len() > cap {
            return Err(VerifyError::Cap {
                points: values.len().to_string(),
                cap,
            });
        }
        Ok(Self { values })
    }
}

fn list(name: &str, items: &[toml::Value]) -> Result<Vec<Value>> {
    let values = items.iter().map(|v| scalar(name, v)).collect::<Result<Vec<_>>>()?;
    if let Some(first) = values.first() {
        if values.iter().any(|v| kind(v) != kind(first)) {
            return config_err(format!("{name}: mixes rational and decimal values"));
        }
    }
    Ok(values)
}

fn range(name: &str, min: Value, max: Value, step: Value, cap: usize) -> Result<Vec<Value>> {
    let (k0, k1, k2) = (kind(&min), kind(&max), kind(&step));
    if k0 != k1 || k1 != k2 {
        return config_err(format!("{name}: mixes rational and decimal values"));
    }
    let too_many = |n: String| Err(VerifyError::Cap { points: n, cap });
    match (min, max, step) {
        (Value::Exact(lo), Value::Exact(hi), Value::Exact(h)) => {
            if lo > hi {
                return config_err(format!("{name}: min > max"));
            }
            if !h.is_positive() {
                return config_err(format!("{name}: step must be positive"));
            }
            let n = ((&hi - &lo) / &h).floor().to_integer();
            match n.to_usize() {
                Some(n) if n < cap => {}
                _ => return too_many(format!("{}", n + 1)),
            }
            let n = n.to_usize().unwrap_or(0);
            Ok((0..=n)
                .map(|i| Value::Exact(&lo + &h * BigRational::from_integer(BigInt::from(i))))
                .collect())
        }
        (Value::Real(lo), Value::Real(hi), Value::Real(h)) => {
            if lo > hi {
                return config_err(format!("{name}: min > max"));
            }
            if h.is_nan() || h <= 0.0 {
                return config_err(format!("{name}: step must be positive"));
            }
            // A relative slack keeps `max` when (max − min)/step is an integer up to rounding.
            let n = ((hi - lo) / h * (1.0 + 1e-12)).floor();
            if n >= cap as f64 {
                return too_many(format!("{}", n + 1.0));
            }
            Ok((0..=n as usize).map(|i| Value::Real(lo + h * i as f64)).collect())
        }
        _ => unreachable!("kinds checked above"),
    }
}

/// A grid point: parameter name to value.
pub type Point = BTreeMap<String, Value>;

pub fn point_params(point: &Point) -> Params {
    point.iter().map(|(k, v)| (k.clone(), v.to_quantity())).collect()
}

/// Named axes; the grid of a subset of names is the cartesian product of those axes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridSpec {
    pub axes: BTreeMap<String, Axis>,
}

impl GridSpec {
    pub fn axis(&self, name: &str) -> Result<&Axis> {
        self.axes
            .get(name)
            .ok_or_else(|| VerifyError::Config(format!("grid is missing the `{name}` axis")))
    }

    /// Number of points in the product of `names`, `None` on overflow.
    pub fn count(&self, names: &[&str]) -> Result<Option<usize>> {
        let mut n: Option<usize> = Some(1);
        for name in names {
            let len = self.axis(name)?.len();
            n = n.and_then(|n| n.checked_mul(len));
        }
        Ok(n)
    }

    /// Points of the product of `names`, the last name varying fastest.
    pub fn points(&self, names: &[&str]) -> Result<Vec<Point>> {
        let mut out = vec![Point::new()];
        for name in names {
            let axis = self.axis(name)?;
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.values().iter().map(move |v| {
                        let mut q = p.clone();
                        q.insert(name.to_string(), v.clone());
                        q
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Fails unless every value of `name` is an exact rational.
    pub fn require_exact(&self, name: &str) -> Result<()> {
        if self.axis(name)?.is_exact() {
            Ok(())
        } else {
            config_err(format!("`{name}` feeds an exact check; give it as \"p/q\" strings"))
        }
    }
}

/// Exact value of a point coordinate.
pub fn exact<'a>(p: &'a Point, name: &str) -> &'a BigRational {
    p[name]
        .as_rational()
        .expect("exact axes are validated when the suite is resolved")
}

pub fn real(p: &Point, name: &str) -> f64 {
    p[name].as_f64()
}

/// Non-negative integer coordinate (orders such as `m` or `q`).
pub fn index(p: &Point, name: &str) -> usize {
    let r = exact(p, name);
    r.to_integer().to_usize().unwrap_or(0)
}

pub(crate) fn require_index(grid: &GridSpec, name: &str) -> Result<()> {
    grid.require_exact(name)?;
    for v in grid.axis(name)?.values() {
        let r = v.as_rational().expect("checked exact");
        if !r.is_integer() || r.is_negative() || r.to_integer().to_usize().is_none() {
            return config_err(format!("`{name}` must be a non-negative integer (got {v})"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis(src: &str) -> Result<Axis> {
        let v: toml::Table = toml::from_str(&format!("x = {src}")).unwrap();
        Axis::from_toml("x", &v["x"], 1000)
    }

    #[test]
    fn rational_range() {
        let a = axis(r#"{ min = "1/4", max = "1", step = "1/4" }"#).unwrap();
        let s: Vec<String> = a.values().iter().map(|v| v.to_string()).collect();
        assert_eq!(s, ["1/4", "1/2", "3/4", "1"]);
        assert!(a.is_exact());
    }

    #[test]
    fn real_range_keeps_endpoint() {
        let a = axis("{ min = 0.0, max = 1.0, step = 0.1 }").unwrap();
        assert_eq!(a.len(), 11);
        assert!(!a.is_exact());
    }

    #[test]
    fn mixing_is_rejected() {
        assert!(axis(r#"{ min = "0", max = 1.0, step = "1/2" }"#).is_err());
        assert!(axis(r#"["1/2", 0.75]"#).is_err());
        assert!(axis(r#"{ min = "1.5", max = "2", step = "1" }"#).is_err());
    }

    #[test]
    fn bad_ranges() {
        assert!(axis(r#"{ min = "2", max = "1", step = "1" }"#).is_err());
        assert!(axis(r#"{ min = "0", max = "1", step = "0" }"#).is_err());
        assert!(matches!(
            axis(r#"{ min = "0", max = "1", step = "1/5000" }"#),
            Err(VerifyError::Cap { .. })
        ));
    }

    #[test]
    fn product_order() {
        let mut g = GridSpec::default();
        g.axes.insert("a".into(), axis("[1, 2]").unwrap());
        g.axes.insert("b".into(), axis("[10, 20, 30]").unwrap());
        let pts = g.points(&["a", "b"]).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[1]["b"].to_string(), "20");
        assert_eq!(g.count(&["a", "b"]).unwrap(), Some(6));
    }
}
