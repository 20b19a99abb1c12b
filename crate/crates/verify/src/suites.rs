//! Suite registry: default grids, the sections each suite runs and per-point evaluation.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use turan_core::exact::{
    conjecture1_alpha1_check, conjecture1_check, lambda_positivity_exact, lemma3_check, lemma4_check, m_k_check,
    phi_positivity_exact,
};
use turan_core::rational::{format_rational, parse_rational};
use turan_core::report::{relative_gap, Params};
use turan_core::series::{
    complete_monotonicity_check, f_twosided_check, g_twosided_check, lambda_below_check, mult_convexity_check,
    phi_below_check, turanian_bounds_check, CoefficientSequence, Form, SequenceFamily, TuranianSpec,
};
use turan_core::special::{
    bessel_bounds_check, bessel_maclaurin_check, bessel_turanian, contiguous_quadratic_root, contiguous_residuals,
    exp_remainder_disc_wright, exp_remainder_turan_bounds, harmonic_weights_log_concave, hyperterm_logconcavity,
    kummer_bounds_check, kummer_logderiv, param_derivative_turan_bounds, symmetric_chain_check,
};
use turan_core::{CheckResult, Error as CoreError, Quantity, Status};

use crate::config::{Config, SuiteOverrides, Tolerances};
use crate::error::{config_err, Result, VerifyError};
use crate::grid::{exact, index, point_params, real, require_index, Axis, GridSpec, Point, Value};

/// `I_0(2)² − I_1(2)²`, from a 30-digit reference evaluation.
pub const BESSEL_DELTA1_AT_2: f64 = 2.666_383_547_296_083_7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lemmas,
    Theorem1,
    Theorem2,
    Corollaries,
    Bessel,
    Kummer,
    Chain,
    Remainder,
    ParamDerivative,
    Conjecture,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Lemmas,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Corollaries,
        Suite::Bessel,
        Suite::Kummer,
        Suite::Chain,
        Suite::Remainder,
        Suite::ParamDerivative,
        Suite::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Corollaries => "corollaries",
            Suite::Bessel => "bessel",
            Suite::Kummer => "kummer",
            Suite::Chain => "chain",
            Suite::Remainder => "remainder",
            Suite::ParamDerivative => "param_derivative",
            Suite::Conjecture => "conjecture",
        }
    }

    pub fn about(self) -> &'static str {
        match self {
            Suite::Lemmas => "gamma-sum and telescoping identities, M_k sign pattern (exact)",
            Suite::Theorem1 => "positivity of the f-form Turanian coefficients (exact)",
            Suite::Theorem2 => "positivity of the g-form Turanian coefficients (exact)",
            Suite::Corollaries => "ratio bounds, lower bounds, Turanian sandwiches, convexity (floating)",
            Suite::Bessel => "modified Bessel Turanian sandwich, Maclaurin positivity, oracle value",
            Suite::Kummer => "Kummer log-derivative bounds, orientation, contiguous relations",
            Suite::Chain => "elementary-symmetric chain implies hyperterm log-concavity (exact)",
            Suite::Remainder => "exponential remainder Turan bounds and discrete Wright log-concavity",
            Suite::ParamDerivative => "harmonic weights log-concavity and parameter-derivative sandwich",
            Suite::Conjecture => "counterexample search for the open conjecture (exact where mu > 0)",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| VerifyError::UnknownSuite(name.to_string()))
    }

    /// Built-in defaults, in the same TOML shape as a `[suites.<name>]` table.
    pub fn defaults(self) -> &'static str {
        match self {
            Suite::Lemmas => {
                r#"
[grid]
m = { min = 0, max = 12, step = 1 }
mu = { min = "1/4", max = "2", step = "1/4" }
a = { min = "0", max = "2", step = "1/2" }
b = { min = "0", max = "2", step = "1/2" }
beta = { min = "0", max = "2", step = "1/4" }
"#
            }
            Suite::Theorem1 => {
                r#"
m_max = 30
families = ["ones", "reciprocal_factorial", "geometric:1/2", "pochhammer:3/2", "harmonic:2"]
[grid]
mu = ["1/2", "1", "2", "4"]
a = ["1/2", "1", "2", "3"]
b = ["1/2", "1", "2", "3"]
"#
            }
            Suite::Theorem2 => {
                r#"
m_max = 30
families = ["ones", "reciprocal_factorial", "geometric:1/2", "pochhammer:1", "pochhammer:3/2", "pochhammer:2"]
[grid]
mu = ["1/2", "1", "2", "4"]
beta = ["1/2", "1", "2", "3"]
"#
            }
            Suite::Corollaries => {
                r#"
families = ["ones", "reciprocal_factorial", "pochhammer:3/2"]
[grid]
mu = [0.5, 1.0, 2.5]
a = [0.5, 2.0]
b = [0.5, 2.0]
beta = [0.5, 2.0]
epsilon = [0.5, 1.0]
x = [0.0, 0.5, 2.0, 5.0]
"#
            }
            Suite::Bessel => {
                r#"
m_max = 30
[grid]
nu = { min = "-1", max = "5", step = "1/2" }
epsilon = ["1/4", "1/2", "1"]
u = { min = "0", max = "20", step = "1/2" }
"#
            }
            Suite::Kummer => {
                r#"
[grid]
a = [1.0, 1.5, 2.0, 3.0, 5.0]
b = [0.25, 0.5, 1.0, 2.0, 4.0, 7.0]
x = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0]
"#
            }
            Suite::Chain => {
                r#"
m_max = 50
[grid]
q = [1, 2, 3]
values = ["1/2", "1", "3/2", "2", "3"]
"#
            }
            Suite::Remainder => {
                r#"
[grid]
eta = [1.0, 1.5, 2.0, 3.0]
nu = [-1.0, -0.5, 0.0, 1.0, 2.5]
s = [0.5, 2.0]
x = [0.5, 1.0, 3.0, 8.0]
"#
            }
            Suite::ParamDerivative => {
                r#"
m_max = 40
[grid]
a = ["1", "3/2", "2", "5"]
b = [0.5, 1.0, 2.0, 4.0]
x = [0.5, 1.0, 3.0, 6.0]
"#
            }
            Suite::Conjecture => {
                r#"
[grid]
m = { min = 0, max = 10, step = 1 }
mu = { min = "1/4", max = "4", step = "1/4" }
alpha = { min = "1/4", max = "4", step = "1/4" }
beta = { min = "1/4", max = "4", step = "1/4" }
"#
            }
        }
    }

    fn sections(self) -> &'static [Section] {
        use Section::*;
        match self {
            Suite::Lemmas => &[Lemma3, MK, Lemma4],
            Suite::Theorem1 => &[Phi],
            Suite::Theorem2 => &[Lambda],
            Suite::Corollaries => &[FForm, GForm, Turanian],
            Suite::Bessel => &[BesselBounds, BesselMaclaurin, BesselOracle],
            Suite::Kummer => &[KummerBounds, KummerResiduals],
            Suite::Chain => &[Chain],
            Suite::Remainder => &[RemainderBounds, RemainderWright],
            Suite::ParamDerivative => &[HarmonicLogConcave, DerivativeBounds],
            Suite::Conjecture => &[Conjecture, Alpha1],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Lemma3,
    MK,
    Lemma4,
    Phi,
    Lambda,
    FForm,
    GForm,
    Turanian,
    BesselBounds,
    BesselMaclaurin,
    BesselOracle,
    KummerBounds,
    KummerResiduals,
    Chain,
    RemainderBounds,
    RemainderWright,
    HarmonicLogConcave,
    DerivativeBounds,
    Conjecture,
    Alpha1,
}

impl Section {
    fn axes(self) -> &'static [&'static str] {
        use Section::*;
        match self {
            Lemma3 | MK => &["m", "mu", "a", "b"],
            Lemma4 => &["m", "mu", "beta"],
            Phi => &["mu", "a", "b"],
            Lambda => &["mu", "beta"],
            FForm => &["mu", "a", "b", "x"],
            GForm => &["mu", "beta", "x"],
            Turanian => &["mu", "epsilon", "x"],
            BesselBounds => &["nu", "epsilon", "u"],
            BesselMaclaurin => &["nu", "epsilon"],
            BesselOracle => &[],
            KummerBounds | KummerResiduals => &["a", "b", "x"],
            Chain => &["q", "values"],
            RemainderBounds => &["eta", "nu", "x"],
            RemainderWright => &["eta", "nu", "s", "x"],
            HarmonicLogConcave => &["a"],
            DerivativeBounds => &["a", "b", "x"],
            Conjecture => &["m", "mu", "alpha", "beta"],
            Alpha1 => &["m", "mu", "beta"],
        }
    }

    /// Axes feeding rational arithmetic.
    fn exact_axes(self) -> &'static [&'static str] {
        use Section::*;
        match self {
            Lemma3 | MK | Lemma4 | Phi | Lambda | Chain | Conjecture | Alpha1 => self.axes(),
            BesselMaclaurin => &["nu", "epsilon"],
            HarmonicLogConcave => &["a"],
            _ => &[],
        }
    }

    fn index_axes(self) -> &'static [&'static str] {
        use Section::*;
        match self {
            Lemma3 | MK | Lemma4 | Conjecture | Alpha1 => &["m"],
            Chain => &["q"],
            _ => &[],
        }
    }

    fn uses_families(self) -> bool {
        matches!(
            self,
            Section::Phi | Section::Lambda | Section::FForm | Section::GForm | Section::Turanian
        )
    }

    /// Check id used when a point cannot be evaluated at all.
    fn base_id(self) -> &'static str {
        use Section::*;
        match self {
            Lemma3 => "lemma3",
            MK => "m_k",
            Lemma4 => "lemma4",
            Phi => "phi_positivity",
            Lambda => "lambda_positivity",
            FForm => "f_form",
            GForm => "g_form",
            Turanian => "turanian",
            BesselBounds => "bessel.bounds",
            BesselMaclaurin => "bessel.maclaurin",
            BesselOracle => "bessel.oracle",
            KummerBounds => "kummer.bounds",
            KummerResiduals => "kummer.contiguous",
            Chain => "chain.implies_log_concave",
            RemainderBounds => "exp_remainder.bounds",
            RemainderWright => "exp_remainder.disc_wright",
            HarmonicLogConcave => "param_derivative.log_concave",
            DerivativeBounds => "param_derivative.bounds",
            Conjecture => "conjecture1.positive",
            Alpha1 => "conjecture1.alpha1_slice",
        }
    }
}

/// A named coefficient family, written `name` or `name:p/q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub label: String,
    pub spec: SequenceFamily,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let rational = |what: &str| -> Result<BigRational> {
            let a = arg.ok_or_else(|| VerifyError::Config(format!("family `{name}` needs `{name}:<{what}>`")))?;
            parse_rational(a).map_err(|e| VerifyError::Config(format!("family `{s}`: {e}")))
        };
        let spec = match name {
            "ones" => SequenceFamily::Ones,
            "reciprocal_factorial" => SequenceFamily::ReciprocalFactorial,
            "geometric" => SequenceFamily::Geometric {
                ratio: rational("ratio")?,
            },
            "pochhammer" => SequenceFamily::PochhammerRatio { eta: rational("eta")? },
            "harmonic" => SequenceFamily::HarmonicWeighted { a: rational("a")? },
            "factorial_power" => {
                let p = rational("power")?;
                let power = p
                    .is_integer()
                    .then(|| p.to_integer().try_into().ok())
                    .flatten()
                    .ok_or_else(|| VerifyError::Config(format!("family `{s}`: power must be a small integer")))?;
                SequenceFamily::FactorialPower { power }
            }
            _ => return config_err(format!("unknown sequence family `{name}`")),
        };
        if arg.is_some() && matches!(spec, SequenceFamily::Ones | SequenceFamily::ReciprocalFactorial) {
            return config_err(format!("family `{name}` takes no argument"));
        }
        Ok(Self {
            label: s.trim().to_string(),
            spec,
        })
    }
}

/// Suite defaults merged with the config overrides.
#[derive(Debug, Clone)]
pub struct ResolvedSuite {
    pub suite: Suite,
    pub grid: GridSpec,
    pub m_max: Option<usize>,
    pub families: Vec<Family>,
    pub tolerances: Tolerances,
}

/// The parts of a resolved suite that enter the config digest.
#[derive(Debug, Serialize)]
pub struct SuiteDigest {
    pub suite: &'static str,
    pub m_max: Option<usize>,
    pub families: Vec<String>,
    pub grid: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Task {
    section: Section,
    point: Point,
    family: Option<usize>,
}

impl ResolvedSuite {
    pub fn resolve(suite: Suite, config: &Config) -> Result<Self> {
        let mut base: SuiteOverrides =
            toml::from_str(suite.defaults()).expect("built-in suite defaults are valid TOML");
        if let Some(o) = config.suites.get(suite.name()) {
            for (k, v) in &o.grid {
                if !base.grid.contains_key(k) {
                    return config_err(format!("suite `{}` has no `{k}` axis", suite.name()));
                }
                base.grid.insert(k.clone(), v.clone());
            }
            if o.m_max.is_some() {
                if base.m_max.is_none() {
                    return config_err(format!("suite `{}` takes no m_max", suite.name()));
                }
                base.m_max = o.m_max;
            }
            if let Some(f) = &o.families {
                if base.families.is_none() {
                    return config_err(format!("suite `{}` takes no families", suite.name()));
                }
                base.families = Some(f.clone());
            }
        }
        let cap = config.settings.max_points;
        let mut grid = GridSpec::default();
        for (k, v) in &base.grid {
            grid.axes
                .insert(k.clone(), Axis::from_toml(&format!("{}.{k}", suite.name()), v, cap)?);
        }
        for section in suite.sections() {
            for name in section.exact_axes() {
                grid.require_exact(name)?;
            }
            for name in section.index_axes() {
                require_index(&grid, name)?;
            }
        }
        let families = base
            .families
            .unwrap_or_default()
            .iter()
            .map(|s| Family::parse(s))
            .collect::<Result<Vec<_>>>()?;
        if suite.sections().iter().any(|s| s.uses_families()) && families.is_empty() {
            return Err(VerifyError::NoChecks);
        }
        Ok(Self {
            suite,
            grid,
            m_max: base.m_max,
            families,
            tolerances: config.settings.tolerances,
        })
    }

    pub fn digest_view(&self) -> SuiteDigest {
        SuiteDigest {
            suite: self.suite.name(),
            m_max: self.m_max,
            families: self.families.iter().map(|f| f.label.clone()).collect(),
            grid: self
                .grid
                .axes
                .iter()
                .map(|(k, a)| (k.clone(), a.values().iter().map(Value::to_string).collect()))
                .collect(),
        }
    }

    /// Number of tasks, `None` on overflow.
    pub fn task_count(&self) -> Result<Option<usize>> {
        let mut total: Option<usize> = Some(0);
        for &section in self.suite.sections() {
            let n = if section == Section::Chain {
                Some(self.chain_points()?.len())
            } else {
                let per = if section.uses_families() {
                    self.families.len()
                } else {
                    1
                };
                self.grid.count(section.axes())?.and_then(|n| n.checked_mul(per))
            };
            total = total.zip(n).and_then(|(t, n)| t.checked_add(n));
        }
        Ok(total)
    }

    pub fn tasks(&self) -> Result<Vec<Task>> {
        let mut out = Vec::new();
        for &section in self.suite.sections() {
            if section == Section::Chain {
                out.extend(self.chain_points()?.into_iter().map(|point| Task {
                    section,
                    point,
                    family: None,
                }));
                continue;
            }
            let points = self.grid.points(section.axes())?;
            if section.uses_families() {
                for f in 0..self.families.len() {
                    out.extend(points.iter().map(|p| Task {
                        section,
                        point: p.clone(),
                        family: Some(f),
                    }));
                }
            } else {
                out.extend(points.into_iter().map(|point| Task {
                    section,
                    point,
                    family: None,
                }));
            }
        }
        Ok(out)
    }

    /// `(q, r, a, b)` with `a` of length `q−r` and `b` of length `q`, both non-decreasing over `values`.
    fn chain_points(&self) -> Result<Vec<Point>> {
        let values: Vec<BigRational> = self
            .grid
            .axis("values")?
            .values()
            .iter()
            .filter_map(|v| v.as_rational().cloned())
            .collect();
        if values.iter().any(|v| !v.is_positive()) {
            return config_err("chain.values must be positive");
        }
        let mut out = Vec::new();
        for qv in self.grid.axis("q")?.values() {
            let q = index(&BTreeMap::from([("q".to_string(), qv.clone())]), "q");
            if q > 6 {
                return config_err("chain.q is limited to 6");
            }
            for r in 0..=q {
                for b in multisets(values.len(), q) {
                    for a in multisets(values.len(), q - r) {
                        let mut p = Point::new();
                        p.insert("q".into(), qv.clone());
                        p.insert("r".into(), Value::Exact(BigRational::from_integer(r.into())));
                        for (i, &j) in a.iter().enumerate() {
                            p.insert(format!("a{}", i + 1), Value::Exact(values[j].clone()));
                        }
                        for (i, &j) in b.iter().enumerate() {
                            p.insert(format!("b{}", i + 1), Value::Exact(values[j].clone()));
                        }
                        out.push(p);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Evaluates one task; evaluation errors become non-failing statuses.
    pub fn evaluate(&self, task: &Task) -> Vec<CheckResult> {
        let family = task.family.map(|f| &self.families[f]);
        let results = self.evaluate_inner(task.section, &task.point, family);
        let mut results = match results {
            Ok(r) => r,
            Err(e) => {
                let params = point_params(&task.point);
                let id = task.section.base_id();
                vec![match e {
                    VerifyError::Core(
                        CoreError::Precondition(_)
                        | CoreError::HypothesisViolation(_)
                        | CoreError::Domain { .. }
                        | CoreError::Pole(_)
                        | CoreError::Arity(_),
                    ) => CheckResult::hypothesis_violation(id, params),
                    _ => CheckResult::skipped(id, params),
                }]
            }
        };
        if let Some(f) = family {
            for r in &mut results {
                r.check_id = format!("{}@{}", r.check_id, f.label);
            }
        }
        results
    }

    fn m_max(&self) -> usize {
        self.m_max.expect("sections that need m_max have a default")
    }

    fn evaluate_inner(&self, section: Section, p: &Point, family: Option<&Family>) -> Result<Vec<CheckResult>> {
        use Section::*;
        let seq_f64 = || -> Result<CoefficientSequence<f64>> {
            Ok(CoefficientSequence::family(
                family.expect("family sections carry one").spec.clone(),
            )?)
        };
        Ok(match section {
            Lemma3 => lemma3_check(index(p, "m"), exact(p, "mu"), exact(p, "a"), exact(p, "b"))?.to_vec(),
            MK => m_k_check(index(p, "m"), exact(p, "mu"), exact(p, "a"), exact(p, "b"))?.to_vec(),
            Lemma4 => lemma4_check(index(p, "m"), exact(p, "mu"), exact(p, "beta"))?.to_vec(),
            Phi => vec![phi_positivity_exact(
                &seq_f64()?,
                exact(p, "mu"),
                exact(p, "a"),
                exact(p, "b"),
                self.m_max(),
            )?],
            Lambda => vec![lambda_positivity_exact(
                &seq_f64()?,
                exact(p, "mu"),
                exact(p, "beta"),
                self.m_max(),
            )?],
            FForm => {
                let seq = seq_f64()?;
                let x = real(p, "x");
                let spec = TuranianSpec::f_form(real(p, "mu"), real(p, "a"), real(p, "b"));
                let mut out = f_twosided_check(&seq, &spec, x)?.to_vec();
                out.push(phi_below_check(&seq, &spec, x)?);
                out.push(mult_convexity_check(&seq, &spec, x, 2.0 * x + 1.0)?);
                if x > 0.0 {
                    out.extend(complete_monotonicity_check(&seq, &spec, x, 4)?);
                }
                out
            }
            GForm => {
                let seq = seq_f64()?;
                let x = real(p, "x");
                let spec = TuranianSpec::g_form(real(p, "mu"), real(p, "beta"));
                let mut out = g_twosided_check(&seq, &spec, x)?.to_vec();
                out.push(lambda_below_check(&seq, &spec, x)?);
                out.push(mult_convexity_check(&seq, &spec, x, 2.0 * x + 1.0)?);
                if x > 0.0 {
                    out.extend(complete_monotonicity_check(&seq, &spec, x, 4)?);
                }
                out
            }
            Turanian => {
                let seq = seq_f64()?;
                let (mu, eps, x) = (real(p, "mu"), real(p, "epsilon"), real(p, "x"));
                let mut out = turanian_bounds_check(&seq, mu, eps, x, Form::F)?.to_vec();
                // The g-form sandwich is only stated for unit shifts.
                if eps == 1.0 {
                    out.extend(turanian_bounds_check(&seq, mu, eps, x, Form::G)?);
                }
                out
            }
            BesselBounds => bessel_bounds_check(real(p, "nu"), real(p, "epsilon"), real(p, "u"))?.to_vec(),
            BesselMaclaurin => vec![bessel_maclaurin_check(
                exact(p, "nu"),
                exact(p, "epsilon"),
                self.m_max(),
            )?],
            BesselOracle => vec![self.bessel_oracle()?],
            KummerBounds => self.kummer_bounds(real(p, "a"), real(p, "b"), real(p, "x"))?,
            KummerResiduals => self.kummer_residuals(real(p, "a"), real(p, "b"), real(p, "x"))?,
            Chain => vec![self.chain(p)?],
            RemainderBounds => exp_remainder_turan_bounds(real(p, "eta"), real(p, "nu"), real(p, "x"))?.to_vec(),
            RemainderWright => vec![exp_remainder_disc_wright(
                real(p, "eta"),
                real(p, "nu"),
                real(p, "s"),
                real(p, "x"),
            )?],
            HarmonicLogConcave => {
                let a = exact(p, "a");
                let k_max = self.m_max();
                let mut params = Params::new();
                params.insert("a".into(), Quantity::Exact(a.clone()));
                params.insert("k_max".into(), Quantity::Integer(k_max as i64));
                let id = "param_derivative.log_concave.exact";
                vec![if harmonic_weights_log_concave(a, k_max)? {
                    CheckResult::new(id, params, Status::Pass, None)
                } else {
                    CheckResult::fail(id, params, Quantity::Integer(0), "harmonic weights are not log-concave")
                }]
            }
            DerivativeBounds => param_derivative_turan_bounds(real(p, "a"), real(p, "b"), real(p, "x"))?.to_vec(),
            Conjecture => vec![conjecture1_check(
                index(p, "m"),
                exact(p, "mu"),
                exact(p, "alpha"),
                exact(p, "beta"),
            )?],
            Alpha1 => vec![conjecture1_alpha1_check(
                index(p, "m"),
                exact(p, "mu"),
                exact(p, "beta"),
            )?],
        })
    }

    fn bessel_oracle(&self) -> Result<CheckResult> {
        let v = bessel_turanian(0.0_f64, 1.0, 2.0)?;
        let err = (v - BESSEL_DELTA1_AT_2).abs() / BESSEL_DELTA1_AT_2;
        let tol = self.tolerances.oracle;
        let mut params = Params::new();
        params.insert("nu".into(), Quantity::Integer(0));
        params.insert("epsilon".into(), Quantity::Integer(1));
        params.insert("u".into(), Quantity::Integer(2));
        Ok(CheckResult::from_margin(
            "bessel.oracle",
            params,
            tol - err,
            false,
            0.0,
            || format!("value {v} differs from the oracle {BESSEL_DELTA1_AT_2} by {err:e} (relative)"),
        ))
    }

    fn kummer_bounds(&self, a: f64, b: f64, x: f64) -> Result<Vec<CheckResult>> {
        let mut out = kummer_bounds_check(a, b, x)?.to_vec();
        if a != b {
            // The root with constant a−1 is a lower bound for b > a and an upper bound for b < a.
            let r = kummer_logderiv(a, b, x)?;
            let root = contiguous_quadratic_root(b, x, a - 1.0);
            let mut params = Params::new();
            for (k, v) in [("a", a), ("b", b), ("x", x)] {
                params.insert(k.into(), Quantity::Real(v));
            }
            let (side, margin) = if b > a {
                (1_i64, relative_gap(root, r))
            } else {
                (-1, relative_gap(r, root))
            };
            params.insert("side".into(), Quantity::Integer(side));
            let noise = 64.0 * f64::EPSILON;
            out.push(if margin.abs() <= noise {
                CheckResult::skipped("kummer.orientation", params)
            } else {
                CheckResult::from_margin("kummer.orientation", params, margin, true, 0.0, || {
                    format!("root {root} is on the wrong side of F'/F = {r}")
                })
            });
        }
        Ok(out)
    }

    fn kummer_residuals(&self, a: f64, b: f64, x: f64) -> Result<Vec<CheckResult>> {
        let tol = self.tolerances.residual;
        let residuals = contiguous_residuals(a, b, x)?;
        Ok(residuals
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut params = Params::new();
                for (k, v) in [("a", a), ("b", b), ("x", x)] {
                    params.insert(k.into(), Quantity::Real(v));
                }
                let id = format!("kummer.contiguous{}", i + 1);
                CheckResult::from_margin(id, params, tol - r.abs(), false, 0.0, || {
                    format!("scaled residual {r:e} exceeds {tol:e}")
                })
            })
            .collect())
    }

    fn chain(&self, p: &Point) -> Result<CheckResult> {
        let collect = |prefix: &str| -> Vec<BigRational> {
            let mut v: Vec<(usize, BigRational)> = p
                .iter()
                .filter_map(|(k, v)| {
                    let i = k.strip_prefix(prefix)?.parse::<usize>().ok()?;
                    Some((i, v.as_rational()?.clone()))
                })
                .collect();
            v.sort_by_key(|(i, _)| *i);
            v.into_iter().map(|(_, r)| r).collect()
        };
        let (a, b) = (collect("a"), collect("b"));
        let r = index(p, "r");
        let n_max = self.m_max();
        let mut params = point_params(p);
        params.insert("n_max".into(), Quantity::Integer(n_max as i64));
        let id = "chain.implies_log_concave.exact";
        let report = symmetric_chain_check(&a, &b, r)?;
        if !report.satisfied {
            return Ok(CheckResult::hypothesis_violation(id, params));
        }
        Ok(if hyperterm_logconcavity(&a, &b, n_max) {
            CheckResult::new(id, params, Status::Pass, None)
        } else {
            let ratios: Vec<String> = report.ratios.iter().map(format_rational).collect();
            CheckResult::fail(
                id,
                params,
                Quantity::Integer(0),
                format!(
                    "chain holds (ratios {}) but the hyperterm is not log-concave",
                    ratios.join(", ")
                ),
            )
        })
    }
}

/// Non-decreasing index tuples of length `k` over `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}
