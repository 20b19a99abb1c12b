//! Series in reciprocal gamma functions and their Turán-type differences.
//!
//! Two families are evaluated:
//!
//! * f-form `f(μ, x) = Σ f_n xⁿ / (n! Γ(μ+n))`
//! * g-form `g(μ, x) = Σ g_n xⁿ / Γ(μ+n)`
//!
//! Turanians are formed as product differences of independently truncated sums,
//! with a double-word fallback when the difference nearly cancels.

mod corollaries;
mod sequence;

pub use corollaries::*;
pub use sequence::{harmonic_difference, CoefficientSequence, SequenceFamily, SequenceFlags, FLAG_PREFIX};
pub(crate) use sequence::{harmonic_weighted_exact, harmonic_weighted_float};

use crate::compensated::{product_difference, CompensatedSum, DoubleWord, GuardedDifference};
use crate::error::{precondition, Error, Result};
use crate::gamma::{gamma_quotient, ln_gamma, recip_gamma};
use crate::scalar::Real;

/// Truncation control for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig<T> {
    /// Stop once a term is below this fraction of the running sum.
    pub rel_stop: T,
    /// ... and the ratio of consecutive terms is below this cap.
    pub ratio_cap: T,
    pub max_terms: usize,
}

impl<T: Real> Default for SeriesConfig<T> {
    fn default() -> Self {
        Self {
            rel_stop: T::lit(1e-16).max(T::epsilon() / T::lit(4.0)),
            ratio_cap: T::lit(0.5),
            max_terms: 10_000,
        }
    }
}

/// A truncated series sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: T,
    /// Low-order part of the compensated sum; `value + residual` is the double-word total.
    pub residual: T,
    /// Index of the last term included.
    pub truncation_order: usize,
    /// Bound on the omitted tail, assuming the term ratios keep decreasing.
    pub tail_bound: T,
}

impl<T: Real> SeriesValue<T> {
    pub fn exact_zero() -> Self {
        Self {
            value: T::zero(),
            residual: T::zero(),
            truncation_order: 0,
            tail_bound: T::zero(),
        }
    }

    pub fn double_word(&self) -> DoubleWord<T> {
        DoubleWord::new(self.value, self.residual)
    }
}

/// Which family a coefficient sequence is plugged into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    /// `Σ f_n xⁿ / (n! Γ(μ+n))`
    F,
    /// `Σ g_n xⁿ / Γ(μ+n)`
    G,
}

/// `f(μ, x)` with the default configuration.
pub fn eval_f<T: Real>(seq: &CoefficientSequence<T>, mu: T, x: T) -> Result<SeriesValue<T>> {
    eval_series(seq, Form::F, mu, x, &SeriesConfig::default())
}

/// `g(μ, x)` with the default configuration.
pub fn eval_g<T: Real>(seq: &CoefficientSequence<T>, mu: T, x: T) -> Result<SeriesValue<T>> {
    eval_series(seq, Form::G, mu, x, &SeriesConfig::default())
}

/// Weight `xⁿ/(n! Γ(μ+n))` or `xⁿ/Γ(μ+n)` evaluated without the recurrence.
fn direct_weight<T: Real>(form: Form, mu: T, x: T, n: usize) -> T {
    let a = mu + T::of_usize(n);
    if crate::scalar::is_nonpositive_integer(a) {
        return T::zero();
    }
    let log_fact = match form {
        Form::F => ln_gamma(T::of_usize(n + 1)).unwrap_or_else(|_| T::zero()),
        Form::G => T::zero(),
    };
    if a > T::zero() {
        let lg = ln_gamma(a).unwrap_or_else(|_| T::infinity());
        (T::of_usize(n) * x.ln() - lg - log_fact).exp()
    } else {
        x.powi(n as i32) * recip_gamma(a) / log_fact.exp()
    }
}

pub fn eval_series<T: Real>(
    seq: &CoefficientSequence<T>,
    form: Form,
    mu: T,
    x: T,
    cfg: &SeriesConfig<T>,
) -> Result<SeriesValue<T>> {
    if x.is_nan() || x < T::zero() {
        return Err(Error::Domain {
            function: "eval_series",
            value: x.as_f64(),
            expected: "x >= 0",
        });
    }
    if x == T::zero() {
        let value = seq.term(0) * recip_gamma(mu);
        return Ok(SeriesValue {
            value,
            ..SeriesValue::exact_zero()
        });
    }
    // First index whose gamma argument is positive: from there on the weights
    // follow a ratio recurrence that never divides by zero.
    let n0 = if mu > T::zero() {
        0
    } else {
        (-mu).floor().to_usize().unwrap_or(0) + 1
    };
    let finite = seq.finite_len();
    let lz = seq.leading_zero_count();
    let mut sum = CompensatedSum::new();
    let mut weight = direct_weight(form, mu, x, 0);
    let mut term = seq.term(0) * weight;
    let mut n = 0usize;
    loop {
        sum.add(term);
        if let Some(len) = finite {
            if n + 1 >= len {
                return finish(sum, n, T::zero());
            }
        }
        if n + 1 >= cfg.max_terms {
            return Err(Error::NonConvergence { terms: cfg.max_terms });
        }
        weight = if n < n0 {
            direct_weight(form, mu, x, n + 1)
        } else {
            let mut w = weight * x / (mu + T::of_usize(n));
            if form == Form::F {
                w /= T::of_usize(n + 1);
            }
            w
        };
        let next = seq.term(n + 1) * weight;
        if n >= lz && n >= n0 && term != T::zero() {
            let ratio = (next / term).abs();
            let s = sum.value().abs();
            if next.abs() <= cfg.rel_stop * s && ratio < cfg.ratio_cap {
                sum.add(next);
                let tail = next.abs() * ratio / (T::one() - ratio);
                return finish(sum, n + 1, tail);
            }
        }
        if !sum.value().is_finite() {
            return Err(Error::Overflow(format!(
                "series sum at mu = {mu}, x = {x} exceeds the floating range"
            )));
        }
        term = next;
        n += 1;
    }
}

fn finish<T: Real>(sum: CompensatedSum<T>, order: usize, tail: T) -> Result<SeriesValue<T>> {
    let dw = sum.double_word();
    if !dw.hi.is_finite() {
        return Err(Error::Overflow("series sum exceeds the floating range".into()));
    }
    Ok(SeriesValue {
        value: dw.hi,
        residual: dw.lo,
        truncation_order: order,
        tail_bound: tail,
    })
}

/// Parameters of one Turanian instance.
#[derive(Debug, Clone, PartialEq)]
pub enum TuranianParams<T> {
    /// `f(μ+a)f(μ+b) − f(μ+a+b)f(μ)`.
    F {
        a: T,
        b: T,
        mu_plus_a_nonneg: bool,
        mu_plus_b_nonneg: bool,
    },
    /// `g(μ+1)g(μ+β) − g(μ)g(μ+β+1)`.
    G { beta: T, mu_plus_beta_nonneg: bool },
}

/// `(μ, a, b)` or `(μ, β)` together with the abscissas to evaluate at.
#[derive(Debug, Clone, PartialEq)]
pub struct TuranianSpec<T> {
    pub mu: T,
    pub params: TuranianParams<T>,
    pub abscissas: Vec<T>,
}

impl<T: Real> TuranianSpec<T> {
    pub fn f_form(mu: T, a: T, b: T) -> Self {
        Self {
            mu,
            params: TuranianParams::F {
                a,
                b,
                mu_plus_a_nonneg: mu + a >= T::zero(),
                mu_plus_b_nonneg: mu + b >= T::zero(),
            },
            abscissas: Vec::new(),
        }
    }

    pub fn g_form(mu: T, beta: T) -> Self {
        Self {
            mu,
            params: TuranianParams::G {
                beta,
                mu_plus_beta_nonneg: mu + beta >= T::zero(),
            },
            abscissas: Vec::new(),
        }
    }

    pub fn with_abscissas(mut self, xs: Vec<T>) -> Self {
        self.abscissas = xs;
        self
    }

    /// The hypotheses of the matching positivity theorem.
    pub fn hypotheses_hold(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::HypothesisViolation(what.to_string()));
        if !(self.mu >= -T::one()) {
            return fail("mu >= -1 is required");
        }
        match self.params {
            TuranianParams::F {
                a,
                b,
                mu_plus_a_nonneg,
                mu_plus_b_nonneg,
            } => {
                if !(a > T::zero() && b > T::zero()) {
                    return fail("a > 0 and b > 0 are required");
                }
                if !(mu_plus_a_nonneg && mu_plus_b_nonneg) {
                    return fail("mu + a >= 0 and mu + b >= 0 are required");
                }
            }
            TuranianParams::G {
                beta,
                mu_plus_beta_nonneg,
            } => {
                if !(beta > T::zero()) {
                    return fail("beta > 0 is required");
                }
                if !mu_plus_beta_nonneg {
                    return fail("mu + beta >= 0 is required");
                }
            }
        }
        Ok(())
    }

    pub fn form(&self) -> Form {
        match self.params {
            TuranianParams::F { .. } => Form::F,
            TuranianParams::G { .. } => Form::G,
        }
    }
}

/// A product difference of two series products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TuranianValue<T> {
    pub value: T,
    /// Magnitude of the larger product.
    pub scale: T,
    /// False when the sign could not be separated from rounding noise.
    pub resolved: bool,
    /// Bound on the error from series truncation plus rounding.
    pub error_bound: T,
}

impl<T: Real> TuranianValue<T> {
    pub fn relative(&self) -> T {
        if self.scale == T::zero() {
            T::zero()
        } else {
            self.value / self.scale
        }
    }

    fn from_parts(
        guard: GuardedDifference<T>,
        a: &SeriesValue<T>,
        b: &SeriesValue<T>,
        c: &SeriesValue<T>,
        d: &SeriesValue<T>,
    ) -> Self {
        let truncation = a.value.abs() * b.tail_bound
            + b.value.abs() * a.tail_bound
            + a.tail_bound * b.tail_bound
            + c.value.abs() * d.tail_bound
            + d.value.abs() * c.tail_bound
            + c.tail_bound * d.tail_bound;
        let orders = T::of_usize(
            a.truncation_order
                .max(b.truncation_order)
                .max(c.truncation_order)
                .max(d.truncation_order)
                + 4,
        );
        let rounding = orders * T::epsilon() * guard.scale;
        let error_bound = truncation + rounding;
        Self {
            value: guard.value,
            scale: guard.scale,
            resolved: guard.resolved && guard.value.abs() > error_bound,
            error_bound,
        }
    }
}

fn turanian<T: Real>(
    seq: &CoefficientSequence<T>,
    form: Form,
    [p1, p2, q1, q2]: [T; 4],
    x: T,
) -> Result<TuranianValue<T>> {
    let cfg = SeriesConfig::default();
    let a = eval_series(seq, form, p1, x, &cfg)?;
    let b = eval_series(seq, form, p2, x, &cfg)?;
    let c = eval_series(seq, form, q1, x, &cfg)?;
    let d = eval_series(seq, form, q2, x, &cfg)?;
    let guard = product_difference(a.double_word(), b.double_word(), c.double_word(), d.double_word());
    Ok(TuranianValue::from_parts(guard, &a, &b, &c, &d))
}

/// `φ_{a,b,μ}(x) = f(a+μ,x) f(b+μ,x) − f(a+b+μ,x) f(μ,x)`.
pub fn eval_phi<T: Real>(seq: &CoefficientSequence<T>, spec: &TuranianSpec<T>, x: T) -> Result<TuranianValue<T>> {
    let TuranianParams::F { a, b, .. } = spec.params else {
        return precondition("eval_phi needs an f-form spec");
    };
    spec.validate()?;
    let mu = spec.mu;
    turanian(seq, Form::F, [mu + a, mu + b, mu + a + b, mu], x)
}

/// `λ_{β,μ}(x) = g(μ+1,x) g(μ+β,x) − g(μ,x) g(μ+β+1,x)`.
pub fn eval_lambda<T: Real>(seq: &CoefficientSequence<T>, spec: &TuranianSpec<T>, x: T) -> Result<TuranianValue<T>> {
    let TuranianParams::G { beta, .. } = spec.params else {
        return precondition("eval_lambda needs a g-form spec");
    };
    spec.validate()?;
    let mu = spec.mu;
    let one = T::one();
    turanian(seq, Form::G, [mu + one, mu + beta, mu, mu + beta + one], x)
}

/// The same product difference as [`eval_phi`] / [`eval_lambda`] without the hypothesis checks.
pub fn eval_product_difference<T: Real>(
    seq: &CoefficientSequence<T>,
    form: Form,
    args: [T; 4],
    x: T,
) -> Result<TuranianValue<T>> {
    turanian(seq, form, args, x)
}

/// `Δ_ε(μ, x) = s(μ,x)² − s(μ+ε,x) s(μ−ε,x)` for `s = f` or `g`.
pub fn generalized_turanian<T: Real>(
    seq: &CoefficientSequence<T>,
    mu: T,
    epsilon: T,
    x: T,
    form: Form,
) -> Result<TuranianValue<T>> {
    if !(epsilon >= T::zero()) {
        return precondition("epsilon must be non-negative");
    }
    if !(mu >= T::zero() && mu - epsilon >= -T::one()) {
        return precondition(format!(
            "generalized Turanian needs mu >= 0 and mu - epsilon >= -1 (mu = {mu}, epsilon = {epsilon})"
        ));
    }
    if epsilon == T::zero() {
        return Ok(TuranianValue {
            value: T::zero(),
            scale: T::zero(),
            resolved: true,
            error_bound: T::zero(),
        });
    }
    turanian(seq, form, [mu, mu, mu + epsilon, mu - epsilon], x)
}

fn check_theorem1_params<T: Real>(a: T, b: T) -> Result<()> {
    if !(a > T::zero() && b > T::zero()) {
        return precondition(format!("a and b must be positive (a = {a}, b = {b})"));
    }
    Ok(())
}

fn inverse_factorials<T: Real>(n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = T::one();
    out.push(acc);
    for k in 1..=n {
        acc /= T::of_usize(k);
        out.push(acc);
    }
    out
}

fn rg_table<T: Real>(base: T, n: usize) -> Vec<T> {
    (0..=n).map(|j| recip_gamma(base + T::of_usize(j))).collect()
}

/// Maclaurin coefficients `φ_0..φ_{m_max}` of `φ_{a,b,μ}` by Cauchy product.
pub fn phi_coefficients<T: Real>(seq: &CoefficientSequence<T>, mu: T, a: T, b: T, m_max: usize) -> Result<Vec<T>> {
    check_theorem1_params(a, b)?;
    let inv_fact = inverse_factorials::<T>(m_max);
    let c: Vec<T> = (0..=m_max).map(|k| seq.term(k) * inv_fact[k]).collect();
    let ra = rg_table(mu + a, m_max);
    let rb = rg_table(mu + b, m_max);
    let r0 = rg_table(mu, m_max);
    let rab = rg_table(mu + a + b, m_max);
    Ok((0..=m_max)
        .map(|m| {
            let mut acc = CompensatedSum::new();
            for k in 0..=m {
                let w = c[k] * c[m - k];
                if w != T::zero() {
                    acc.add(w * (ra[k] * rb[m - k] - r0[m - k] * rab[k]));
                }
            }
            acc.value()
        })
        .collect())
}

/// Maclaurin coefficients `λ_0..λ_{m_max}` of `λ_{β,μ}` by Cauchy product.
pub fn lambda_coefficients<T: Real>(seq: &CoefficientSequence<T>, mu: T, beta: T, m_max: usize) -> Result<Vec<T>> {
    if !(beta > T::zero()) {
        return precondition(format!("beta must be positive (beta = {beta})"));
    }
    let g: Vec<T> = (0..=m_max).map(|k| seq.term(k)).collect();
    let one = T::one();
    let r1 = rg_table(mu + one, m_max);
    let rb = rg_table(mu + beta, m_max);
    let r0 = rg_table(mu, m_max);
    let rb1 = rg_table(mu + beta + one, m_max);
    Ok((0..=m_max)
        .map(|m| {
            let mut acc = CompensatedSum::new();
            for k in 0..=m {
                let w = g[k] * g[m - k];
                if w != T::zero() {
                    acc.add(w * (r1[k] * rb[m - k] - r0[k] * rb1[m - k]));
                }
            }
            acc.value()
        })
        .collect())
}

/// Horner sum `Σ c_m x^m`.
pub fn polynomial_sum<T: Real>(coefficients: &[T], x: T) -> T {
    coefficients.iter().rev().fold(T::zero(), |acc, c| acc * x + *c)
}

/// `(A_ε(μ), B_ε(μ))`, the constants of the generalized Turanian sandwich,
/// written with reciprocal gammas so the pole conventions come out finite.
///
/// `B` is `+∞` when `1/Γ(μ)` vanishes.
pub fn turan_bound_constants<T: Real>(mu: T, epsilon: T) -> Result<(T, T)> {
    if !(mu >= T::zero() && mu - epsilon >= -T::one() && epsilon >= T::zero()) {
        return precondition(format!(
            "bound constants need mu >= 0, epsilon >= 0, mu - epsilon >= -1 (mu = {mu}, epsilon = {epsilon})"
        ));
    }
    let rg = recip_gamma(mu);
    if epsilon == T::one() {
        if mu == T::zero() {
            return Ok((T::zero(), T::infinity()));
        }
        return Ok((rg * rg / mu, mu.recip()));
    }
    let cross = recip_gamma(mu - epsilon) * recip_gamma(mu + epsilon);
    let a = rg * rg - cross;
    let b = if rg == T::zero() {
        T::infinity()
    } else {
        // 1 − Γ(μ)²/(Γ(μ−ε)Γ(μ+ε)), taken through a stable gamma quotient.
        T::one() - gamma_quotient([mu, mu], [mu - epsilon, mu + epsilon])
    };
    Ok((a, b))
}
