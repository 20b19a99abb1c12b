use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::identities::{conjecture1_sum, conjecture1_sum_float, lemma3_closed_form, lemma3_sum, s_m};
use super::pattern::m_k_values;
use super::positivity::coefficient_quantity;
use super::quotient::{Certainty, NormalizedGammaQuotient, Sign};
use crate::error::Result;
use crate::rational::{int, to_f64};
use crate::report::{CheckResult, Params, Quantity};

fn params_of(m: usize, pairs: &[(&str, &BigRational)]) -> Params {
    let mut p: Params = pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Quantity::Exact((*v).clone())))
        .collect();
    p.insert("m".into(), Quantity::Integer(m as i64));
    p
}

/// Equality of two quotients, settled on the rational coefficients first.
fn identity_result(
    base: &str,
    params: Params,
    lhs: &NormalizedGammaQuotient,
    rhs: &NormalizedGammaQuotient,
) -> CheckResult {
    let id = format!("{base}.exact");
    let zero = || Quantity::Exact(BigRational::zero());
    if let Some((dl, dt)) = lhs.coefficient_difference(rhs) {
        if dl.is_zero() && dt.is_zero() {
            return CheckResult::pass(id, params, zero());
        }
    }
    match lhs.exactly_equals(rhs) {
        Some(true) => CheckResult::pass(id, params, zero()),
        Some(false) => {
            let diff = match (lhs.normalized_value(), rhs.normalized_value()) {
                (Some(x), Some(y)) => Quantity::Exact(x - y),
                _ => Quantity::Real(lhs.normalized_f64() - rhs.normalized_f64()),
            };
            CheckResult::fail(id, params, diff, "sum form and closed form differ")
        }
        None => CheckResult::skipped(format!("{base}.certified"), params),
    }
}

/// Compares the sign of `q` with the expected one (`Positive` or `Zero`).
fn sign_result(base: &str, params: Params, q: &NormalizedGammaQuotient, expected: Sign) -> CheckResult {
    let id = format!("{base}.{}", q.certainty().suffix());
    match (q.sign(), expected) {
        (Sign::Undecided, _) => CheckResult::skipped(id, params),
        (s, e) if s == e => CheckResult::pass(id, params, coefficient_quantity(q)),
        (s, e) => CheckResult::fail(
            id,
            params,
            coefficient_quantity(q),
            format!("sign is {s:?}, expected {e:?}"),
        ),
    }
}

/// Gamma-sum identity (term sum = closed form) and its sign: zero iff `ab = 0`, positive otherwise.
///
/// Ids `lemma3.identity.*` and `lemma3.sign.*`. Needs `μ > 0`, `a, b ≥ 0`.
pub fn lemma3_check(m: usize, mu: &BigRational, a: &BigRational, b: &BigRational) -> Result<[CheckResult; 2]> {
    let params = params_of(m, &[("mu", mu), ("a", a), ("b", b)]);
    let sum = lemma3_sum(m, mu, a, b)?;
    let closed = lemma3_closed_form(m, mu, a, b)?;
    let expected = if (a * b).is_zero() { Sign::Zero } else { Sign::Positive };
    Ok([
        identity_result("lemma3.identity", params.clone(), &sum, &closed),
        sign_result("lemma3.sign", params, &sum, expected),
    ])
}

/// Telescoping identity for `S_m(μ,β)` and its sign: zero iff `β = 0`.
pub fn lemma4_check(m: usize, mu: &BigRational, beta: &BigRational) -> Result<[CheckResult; 2]> {
    let params = params_of(m, &[("mu", mu), ("beta", beta)]);
    let (sum, closed) = s_m(m, mu, beta)?;
    let expected = if beta.is_zero() { Sign::Zero } else { Sign::Positive };
    Ok([
        identity_result("lemma4.identity", params.clone(), &sum, &closed),
        sign_result("lemma4.sign", params, &sum, expected),
    ])
}

/// Sign pattern of `M_0..M_{[m/2]}` and `Σ M_k/(k!(m−k)!)` against the gamma sum.
///
/// For `ab > 0` the pattern must change sign at most once and end positive;
/// for `ab = 0` every entry must vanish.
pub fn m_k_check(m: usize, mu: &BigRational, a: &BigRational, b: &BigRational) -> Result<[CheckResult; 2]> {
    let params = params_of(m, &[("mu", mu), ("a", a), ("b", b)]);
    let pattern = m_k_values(m, mu, a, b)?;
    let id = format!("m_k.pattern.{}", pattern.certainty().suffix());
    let last = pattern.entries.last().expect("at least M_0");
    // With ab = 0 the terms cancel pairwise (u = s, v = r), so every M_k vanishes.
    let degenerate = (a * b).is_zero();
    let shape = if degenerate {
        if pattern.signs.iter().all(|s| *s == Sign::Zero) {
            CheckResult::pass(id, params.clone(), Quantity::Exact(BigRational::zero()))
        } else {
            CheckResult::fail(
                id,
                params.clone(),
                coefficient_quantity(last),
                format!("ab = 0 but the signs are {:?}", pattern.signs),
            )
        }
    } else if pattern.is_legal() {
        CheckResult::pass(id, params.clone(), coefficient_quantity(last))
    } else if !pattern.is_decided() {
        CheckResult::skipped(id, params.clone())
    } else {
        CheckResult::fail(
            id,
            params.clone(),
            Quantity::Integer(pattern.change_count as i64),
            format!(
                "signs {:?}: {} change(s), last positive = {}",
                pattern.signs, pattern.change_count, pattern.last_positive
            ),
        )
    };
    let sum = lemma3_sum(m, mu, a, b)?;
    let weighted = match pattern.factorial_weighted_sum(m) {
        Some(w) => identity_result("m_k.weighted_sum", params, &w, &sum),
        None => CheckResult::fail("m_k.weighted_sum.exact", params, Quantity::Integer(0), "bases differ"),
    };
    Ok([shape, weighted])
}

/// Positivity of the finite-sum form of the conjecture at one point.
///
/// Points outside `μ ≥ −1, μ+α ≥ 0, μ+β ≥ 0, α, β > 0` are reported as
/// hypothesis violations. For `μ > 0` the sign is decided in rational
/// arithmetic; otherwise a guarded floating evaluation is used.
pub fn conjecture1_check(m: usize, mu: &BigRational, alpha: &BigRational, beta: &BigRational) -> Result<CheckResult> {
    let params = params_of(m, &[("mu", mu), ("alpha", alpha), ("beta", beta)]);
    let admissible = alpha.is_positive()
        && beta.is_positive()
        && *mu >= -int(1)
        && !(mu + alpha).is_negative()
        && !(mu + beta).is_negative();
    if !admissible {
        return Ok(CheckResult::hypothesis_violation("conjecture1.positive", params));
    }
    if mu.is_positive() {
        let q = conjecture1_sum(m, mu, alpha, beta)?;
        return Ok(sign_result("conjecture1.positive", params, &q, Sign::Positive));
    }
    let id = format!("conjecture1.positive.{}", Certainty::Float.suffix());
    let g = conjecture1_sum_float(m, to_f64(mu), to_f64(alpha), to_f64(beta));
    Ok(if !g.resolved {
        CheckResult::skipped(id, params)
    } else if g.value > 0.0 {
        CheckResult::pass(id, params, g.relative())
    } else {
        CheckResult::fail(id, params, g.value, "finite sum is not positive")
    })
}

/// The `α = 1` slice must reproduce the sum form of `S_m(μ,β)` exactly.
pub fn conjecture1_alpha1_check(m: usize, mu: &BigRational, beta: &BigRational) -> Result<CheckResult> {
    let params = params_of(m, &[("mu", mu), ("beta", beta)]);
    let c = conjecture1_sum(m, mu, &BigRational::one(), beta)?;
    let (s, _) = s_m(m, mu, beta)?;
    Ok(if c == s {
        CheckResult::pass(
            "conjecture1.alpha1_slice.exact",
            params,
            Quantity::Exact(BigRational::zero()),
        )
    } else {
        let diff = Quantity::Real(c.normalized_f64() - s.normalized_f64());
        CheckResult::fail(
            "conjecture1.alpha1_slice.exact",
            params,
            diff,
            "alpha = 1 slice differs from S_m",
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::report::Status;

    #[test]
    fn identities_pass() {
        let [id, sign] = lemma3_check(3, &int(1), &rat(1, 2), &rat(3, 2)).unwrap();
        assert!(id.is_pass() && sign.is_pass(), "{id:?} {sign:?}");
        assert_eq!(id.check_id, "lemma3.identity.exact");
        let [_, sign] = lemma3_check(2, &int(1), &int(0), &int(1)).unwrap();
        assert!(sign.is_pass());
        assert_eq!(sign.margin, Some(Quantity::Exact(BigRational::zero())));
        let [id, sign] = lemma4_check(4, &rat(1, 3), &int(0)).unwrap();
        assert!(id.is_pass() && sign.is_pass());
    }

    #[test]
    fn pattern_and_sum() {
        let [p, w] = m_k_check(7, &rat(2, 3), &rat(5, 2), &rat(1, 4)).unwrap();
        assert!(p.is_pass() && w.is_pass(), "{p:?} {w:?}");
        let [p, _] = m_k_check(4, &rat(1, 4), &int(0), &int(2)).unwrap();
        assert!(p.is_pass(), "{p:?}");
    }

    #[test]
    fn conjecture_points() {
        let r = conjecture1_check(0, &int(1), &rat(1, 2), &rat(1, 2)).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.check_id, "conjecture1.positive.certified");
        let r = conjecture1_check(2, &rat(-1, 2), &rat(1, 4), &int(1)).unwrap();
        assert_eq!(r.status, Status::HypothesisViolation);
        let r = conjecture1_check(3, &rat(-1, 2), &int(1), &int(1)).unwrap();
        assert_eq!(r.check_id, "conjecture1.positive.float");
        assert!(r.is_pass(), "{r:?}");
        assert!(conjecture1_alpha1_check(5, &rat(3, 4), &rat(7, 4)).unwrap().is_pass());
    }
}
