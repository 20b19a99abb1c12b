//! Floating checks of the inequalities that follow from coefficient positivity.
//!
//! Every check returns a [`CheckResult`] whose margin is relative: positive means
//! the inequality holds with room to spare. Strict inequalities whose sign is lost
//! in rounding noise are reported as skipped rather than guessed.

use super::{
    eval_lambda, eval_phi, eval_series, generalized_turanian, turan_bound_constants, CoefficientSequence, Form,
    SeriesConfig, SeriesValue, TuranianParams, TuranianSpec, TuranianValue,
};
use crate::compensated::{product_difference, DoubleWord};
use crate::error::{precondition, Result};
use crate::gamma::{gamma_quotient, ln_gamma, recip_gamma};
use crate::report::{relative_gap, CheckResult, Params, Quantity, DEFAULT_RELATIVE_TOLERANCE};
use crate::scalar::Real;

fn params<T: Real>(pairs: &[(&str, T)]) -> Params {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Quantity::Real(v.as_f64())))
        .collect()
}

fn spec_params<T: Real>(spec: &TuranianSpec<T>, x: T) -> Params {
    match spec.params {
        TuranianParams::F { a, b, .. } => params(&[("mu", spec.mu), ("a", a), ("b", b), ("x", x)]),
        TuranianParams::G { beta, .. } => params(&[("mu", spec.mu), ("beta", beta), ("x", x)]),
    }
}

fn hypotheses<T: Real>(seq: &CoefficientSequence<T>, spec: &TuranianSpec<T>) -> bool {
    spec.hypotheses_hold() && seq.is_doubly_positive()
}

/// Verdict for a strict inequality `value > 0` known up to `resolved`.
fn strict_verdict(id: &str, p: Params, margin: f64, resolved: bool) -> CheckResult {
    if !resolved && margin.is_finite() {
        return CheckResult::skipped(id, p);
    }
    CheckResult::from_margin(id, p, margin, true, 0.0, || {
        format!("strict inequality violated, relative margin {margin:e}")
    })
}

/// Verdict for `lhs ≤ rhs` where each side carries an absolute error bound.
fn weak_verdict(id: &str, p: Params, lhs: f64, rhs: f64, noise: f64) -> CheckResult {
    let margin = relative_gap(lhs, rhs);
    let slack = noise + DEFAULT_RELATIVE_TOLERANCE * lhs.abs().max(rhs.abs());
    let ok = margin >= -DEFAULT_RELATIVE_TOLERANCE || (rhs - lhs) >= -slack;
    if ok {
        CheckResult::pass(id, p, margin)
    } else {
        CheckResult::fail(id, p, margin, format!("expected {lhs:e} <= {rhs:e}"))
    }
}

fn eval_turanian<T: Real>(seq: &CoefficientSequence<T>, spec: &TuranianSpec<T>, x: T) -> Result<TuranianValue<T>> {
    match spec.form() {
        Form::F => eval_phi(seq, spec, x),
        Form::G => eval_lambda(seq, spec, x),
    }
}

fn scaled<T: Real>(v: SeriesValue<T>, factor: T) -> SeriesValue<T> {
    SeriesValue {
        value: v.value * factor,
        residual: v.residual * factor,
        truncation_order: v.truncation_order,
        tail_bound: v.tail_bound * factor,
    }
}

/// `Γ(q1)Γ(q2)s(q1)s(q2) − Γ(p1)Γ(p2)s(p1)s(p2)` for positive arguments.
///
/// Multiplying by Γ turns `1/Γ(c+n)` into `1/(c)_n`, so the leading terms cancel
/// identically and the sign near the origin survives.
fn normalized_gap<T: Real>(
    seq: &CoefficientSequence<T>,
    form: Form,
    p: [T; 2],
    q: [T; 2],
    x: T,
) -> Result<TuranianValue<T>> {
    let cfg = SeriesConfig::default();
    let mut vals = Vec::with_capacity(4);
    for c in [q[0], q[1], p[0], p[1]] {
        let g = ln_gamma(c)?.exp();
        vals.push(scaled(eval_series(seq, form, c, x, &cfg)?, g));
    }
    let guard = product_difference(
        vals[0].double_word(),
        vals[1].double_word(),
        vals[2].double_word(),
        vals[3].double_word(),
    );
    Ok(TuranianValue::from_parts(guard, &vals[0], &vals[1], &vals[2], &vals[3]))
}

/// Lower side of a two-sided ratio bound: `L < s(q1)s(q2)/(s(p1)s(p2))` with
/// `L = Γ(p1)Γ(p2)/(Γ(q1)Γ(q2))`.
fn ratio_lower<T: Real>(
    id: &str,
    p: Params,
    seq: &CoefficientSequence<T>,
    form: Form,
    num: [T; 2],
    den: [T; 2],
    x: T,
) -> Result<CheckResult> {
    let strict = x > T::zero();
    if num.iter().chain(den.iter()).all(|c| *c > T::zero()) {
        let gap = normalized_gap(seq, form, den, num, x)?;
        let margin = gap.relative().as_f64();
        return Ok(if strict {
            strict_verdict(id, p, margin, gap.resolved)
        } else {
            weak_verdict(id, p, 0.0, gap.value.as_f64(), gap.error_bound.as_f64())
        });
    }
    // Poles at μ ∈ {0, −1}: compare the quotient against the pole-aware bound.
    let cfg = SeriesConfig::default();
    let s = |c: T| eval_series(seq, form, c, x, &cfg).map(|v| v.value);
    let ratio = s(num[0])? * s(num[1])? / (s(den[0])? * s(den[1])?);
    let bound = gamma_quotient(den, num);
    let (lhs, rhs) = (bound.as_f64(), ratio.as_f64());
    let margin = relative_gap(lhs, rhs);
    Ok(if strict {
        CheckResult::from_margin(id, p, margin, true, 0.0, || format!("expected {lhs:e} < {rhs:e}"))
    } else {
        weak_verdict(id, p, lhs, rhs, 16.0 * f64::EPSILON * lhs.abs().max(rhs.abs()))
    })
}

/// Both sides of `Γ(a+μ)Γ(b+μ)/(Γ(μ)Γ(a+b+μ)) < f(μ)f(a+b+μ)/(f(a+μ)f(b+μ)) < 1`.
///
/// At `x = 0` the lower side is an equality and is checked non-strictly.
pub fn f_twosided_check<T: Real>(
    seq: &CoefficientSequence<T>,
    spec: &TuranianSpec<T>,
    x: T,
) -> Result<[CheckResult; 2]> {
    let TuranianParams::F { a, b, .. } = spec.params else {
        return precondition("f_twosided_check needs an f-form spec");
    };
    let p = spec_params(spec, x);
    let (lo, hi) = ("f_twosided.lower", "f_twosided.upper");
    if !hypotheses(seq, spec) {
        return Ok([
            CheckResult::hypothesis_violation(lo, p.clone()),
            CheckResult::hypothesis_violation(hi, p),
        ]);
    }
    let mu = spec.mu;
    let phi = eval_phi(seq, spec, x)?;
    let upper = strict_verdict(hi, p.clone(), phi.relative().as_f64(), phi.resolved);
    let lower = ratio_lower(lo, p, seq, Form::F, [mu, mu + a + b], [mu + a, mu + b], x)?;
    Ok([lower, upper])
}

/// Both sides of `μ/(β+μ) < g(μ)g(1+β+μ)/(g(1+μ)g(β+μ)) < 1`.
pub fn g_twosided_check<T: Real>(
    seq: &CoefficientSequence<T>,
    spec: &TuranianSpec<T>,
    x: T,
) -> Result<[CheckResult; 2]> {
    let TuranianParams::G { beta, .. } = spec.params else {
        return precondition("g_twosided_check needs a g-form spec");
    };
    let p = spec_params(spec, x);
    let (lo, hi) = ("g_twosided.lower", "g_twosided.upper");
    if !hypotheses(seq, spec) {
        return Ok([
            CheckResult::hypothesis_violation(lo, p.clone()),
            CheckResult::hypothesis_violation(hi, p),
        ]);
    }
    let mu = spec.mu;
    let one = T::one();
    let lambda = eval_lambda(seq, spec, x)?;
    let upper = strict_verdict(hi, p.clone(), lambda.relative().as_f64(), lambda.resolved);
    let lower = ratio_lower(lo, p, seq, Form::G, [mu, mu + beta + one], [mu + one, mu + beta], x)?;
    Ok([lower, upper])
}

/// Turanian at `x` against its value at the origin, written in closed form.
fn above_origin<T: Real>(id: &str, seq: &CoefficientSequence<T>, spec: &TuranianSpec<T>, x: T) -> Result<CheckResult> {
    let p = spec_params(spec, x);
    if !hypotheses(seq, spec) {
        return Ok(CheckResult::hypothesis_violation(id, p));
    }
    let mu = spec.mu;
    let s0 = seq.term(0);
    let one = T::one();
    let bound = match spec.params {
        TuranianParams::F { a, b, .. } => {
            let rg = |c: T| DoubleWord::from_single(recip_gamma(c));
            let d = product_difference(rg(mu + a), rg(mu + b), rg(mu), rg(mu + a + b));
            s0 * s0 * d.value
        }
        TuranianParams::G { beta, .. } => s0 * s0 * beta * recip_gamma(mu + one) * recip_gamma(mu + beta + one),
    };
    let t = eval_turanian(seq, spec, x)?;
    let diff = t.value - bound;
    let noise = t.error_bound + T::lit(16.0) * T::epsilon() * (t.scale + bound.abs());
    if x == T::zero() {
        return Ok(weak_verdict(id, p, bound.as_f64(), t.value.as_f64(), noise.as_f64()));
    }
    let margin = relative_gap(bound.as_f64(), t.value.as_f64());
    Ok(strict_verdict(id, p, margin, diff.abs() > noise))
}

/// `φ_{a,b,μ}(x) ≥ φ_{a,b,μ}(0)`, strict for `x > 0`.
pub fn phi_below_check<T: Real>(seq: &CoefficientSequence<T>, spec: &TuranianSpec<T>, x: T) -> Result<CheckResult> {
    if spec.form() != Form::F {
        return precondition("phi_below_check needs an f-form spec");
    }
    above_origin("phi_below", seq, spec, x)
}

/// `λ_{β,μ}(x) ≥ g_0²β/(Γ(μ+1)Γ(μ+β+1))`, strict for `x > 0`.
pub fn lambda_below_check<T: Real>(seq: &CoefficientSequence<T>, spec: &TuranianSpec<T>, x: T) -> Result<CheckResult> {
    if spec.form() != Form::G {
        return precondition("lambda_below_check needs a g-form spec");
    }
    above_origin("lambda_below", seq, spec, x)
}

/// `A_ε(μ)s_0² ≤ Δ_ε(μ,x) ≤ B_ε(μ)s(μ,x)²`.
///
/// The g-form bound is only available for `ε = 1`. Both sides are equalities at
/// `x = 0`, so the check is non-strict throughout.
pub fn turanian_bounds_check<T: Real>(
    seq: &CoefficientSequence<T>,
    mu: T,
    epsilon: T,
    x: T,
    form: Form,
) -> Result<[CheckResult; 2]> {
    let (lo, hi) = match form {
        Form::F => ("f_turanian.lower", "f_turanian.upper"),
        Form::G => ("g_turanian.lower", "g_turanian.upper"),
    };
    if form == Form::G && epsilon != T::one() {
        return precondition("the g-form Turanian bound needs epsilon = 1");
    }
    let p = params(&[("mu", mu), ("epsilon", epsilon), ("x", x)]);
    let admissible = mu >= T::zero() && epsilon >= T::zero() && mu - epsilon >= -T::one();
    if !admissible || !seq.is_doubly_positive() {
        return Ok([
            CheckResult::hypothesis_violation(lo, p.clone()),
            CheckResult::hypothesis_violation(hi, p),
        ]);
    }
    let (a, b) = turan_bound_constants(mu, epsilon)?;
    let delta = generalized_turanian(seq, mu, epsilon, x, form)?;
    let s = eval_series(seq, form, mu, x, &SeriesConfig::default())?;
    let s0 = seq.term(0);
    let lower_bound = a * s0 * s0;
    let upper_bound = if b.is_infinite() { b } else { b * s.value * s.value };
    let eps16 = T::lit(16.0) * T::epsilon();
    let noise_lo = delta.error_bound + eps16 * (delta.scale + lower_bound.abs());
    let s_err = T::lit(2.0) * s.value.abs() * s.tail_bound;
    let noise_hi = if b.is_infinite() {
        T::zero()
    } else {
        delta.error_bound + b.abs() * s_err + eps16 * (delta.scale + upper_bound.abs())
    };
    Ok([
        weak_verdict(
            lo,
            p.clone(),
            lower_bound.as_f64(),
            delta.value.as_f64(),
            noise_lo.as_f64(),
        ),
        weak_verdict(hi, p, delta.value.as_f64(), upper_bound.as_f64(), noise_hi.as_f64()),
    ])
}

/// `g(μ+1,x)g(μ+s,x) − g(μ,x)g(μ+s+1,x) > 0`.
pub fn disc_wright_check<T: Real>(seq: &CoefficientSequence<T>, mu: T, s: T, x: T) -> Result<CheckResult> {
    let id = "disc_wright";
    let p = params(&[("mu", mu), ("s", s), ("x", x)]);
    let spec = TuranianSpec::g_form(mu, s);
    if !(mu > T::zero()) || !hypotheses(seq, &spec) {
        return Ok(CheckResult::hypothesis_violation(id, p));
    }
    let t = eval_lambda(seq, &spec, x)?;
    Ok(strict_verdict(id, p, t.relative().as_f64(), t.resolved))
}

/// `t(√(xy))² ≤ t(x)t(y)` for the Turanian `t` of `spec`.
pub fn mult_convexity_check<T: Real>(
    seq: &CoefficientSequence<T>,
    spec: &TuranianSpec<T>,
    x: T,
    y: T,
) -> Result<CheckResult> {
    let id = match spec.form() {
        Form::F => "mult_convexity.phi",
        Form::G => "mult_convexity.lambda",
    };
    let mut p = spec_params(spec, x);
    p.insert("y".into(), Quantity::Real(y.as_f64()));
    if !hypotheses(seq, spec) {
        return Ok(CheckResult::hypothesis_violation(id, p));
    }
    let tm = eval_turanian(seq, spec, (x * y).sqrt())?;
    let tx = eval_turanian(seq, spec, x)?;
    let ty = eval_turanian(seq, spec, y)?;
    let lhs = tm.value * tm.value;
    let rhs = tx.value * ty.value;
    let noise = T::lit(2.0) * tm.value.abs() * tm.error_bound
        + tx.value.abs() * ty.error_bound
        + ty.value.abs() * tx.error_bound
        + T::lit(8.0) * T::epsilon() * lhs.abs().max(rhs.abs());
    Ok(weak_verdict(id, p, lhs.as_f64(), rhs.as_f64(), noise.as_f64()))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `(−1)^n Δ_h^n F(y) ≥ 0` for `F(y) = t(1/y)`, `h = y/2`, `n = 1..=max_order`.
///
/// Forward differences of a completely monotone function have alternating
/// signs, so this is a necessary condition that can be sampled pointwise.
pub fn complete_monotonicity_check<T: Real>(
    seq: &CoefficientSequence<T>,
    spec: &TuranianSpec<T>,
    y: T,
    max_order: usize,
) -> Result<Vec<CheckResult>> {
    let id = match spec.form() {
        Form::F => "complete_monotonicity.phi",
        Form::G => "complete_monotonicity.lambda",
    };
    if !(y > T::zero()) {
        return precondition(format!("complete monotonicity is sampled at y > 0 (y = {y})"));
    }
    let base = |n: usize| {
        let mut p = spec_params(spec, y.recip());
        p.remove("x");
        p.insert("y".into(), Quantity::Real(y.as_f64()));
        p.insert("order".into(), Quantity::Integer(n as i64));
        p
    };
    if !hypotheses(seq, spec) {
        return Ok((1..=max_order)
            .map(|n| CheckResult::hypothesis_violation(id, base(n)))
            .collect());
    }
    let h = y / T::lit(2.0);
    let mut values = Vec::with_capacity(max_order + 1);
    for j in 0..=max_order {
        let t = eval_turanian(seq, spec, (y + T::of_usize(j) * h).recip())?;
        values.push((t.value.as_f64(), t.error_bound.as_f64()));
    }
    Ok((1..=max_order)
        .map(|n| {
            let mut diff = 0.0;
            let mut scale = 0.0;
            let mut err = 0.0;
            for (j, (v, e)) in values.iter().take(n + 1).enumerate() {
                let c = binomial(n, j);
                let sign = if (n - j) % 2 == 0 { 1.0 } else { -1.0 };
                diff += sign * c * v;
                scale += c * v.abs();
                err += c * e;
            }
            let signed = if n % 2 == 0 { diff } else { -diff };
            let noise = err + 16.0 * f64::EPSILON * scale;
            weak_verdict(id, base(n), 0.0, signed, noise)
        })
        .collect())
}
