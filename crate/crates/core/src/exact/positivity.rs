use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::identities::{lemma3_bases, lemma4_bases, pochhammer_table};
use super::quotient::{Certainty, NormalizedGammaQuotient, Sign};
use crate::error::{precondition, Result};
use crate::rational::{factorials, to_f64};
use crate::report::{CheckResult, Counterexample, Params, Quantity, Status};
use crate::scalar::Real;
use crate::series::CoefficientSequence;

/// Exact `φ_0, …, φ_{m_max}` of `φ_{a,b,μ}`, normalized by `Γ(μ+a)Γ(μ+b)`.
pub fn phi_coefficients_exact(
    f: &[BigRational],
    mu: &BigRational,
    a: &BigRational,
    b: &BigRational,
    m_max: usize,
) -> Result<Vec<NormalizedGammaQuotient>> {
    if !mu.is_positive() {
        return precondition(format!("the exact path needs mu > 0 (mu = {mu})"));
    }
    if !(a.is_positive() && b.is_positive()) {
        return precondition(format!("a and b must be positive (a = {a}, b = {b})"));
    }
    let (p, q) = lemma3_bases(mu, a, b);
    let pa = pochhammer_table(&p[0], m_max);
    let pb = pochhammer_table(&p[1], m_max);
    let q0 = pochhammer_table(&q[0], m_max);
    let qab = pochhammer_table(&q[1], m_max);
    let fs = factorials(m_max);
    let c: Vec<BigRational> = (0..=m_max)
        .map(|k| f.get(k).cloned().unwrap_or_else(BigRational::zero) / &fs[k])
        .collect();
    (0..=m_max)
        .map(|m| {
            let mut lead = BigRational::zero();
            let mut trail = BigRational::zero();
            for k in 0..=m {
                let w = &c[k] * &c[m - k];
                if w.is_zero() {
                    continue;
                }
                lead += &w / (&pa[k] * &pb[m - k]);
                trail += &w / (&q0[m - k] * &qab[k]);
            }
            NormalizedGammaQuotient::new(lead, p.clone(), trail, q.clone())
        })
        .collect()
}

/// Exact `λ_0, …, λ_{m_max}` of `λ_{β,μ}`, normalized by `Γ(μ+1)Γ(μ+β)`.
pub fn lambda_coefficients_exact(
    g: &[BigRational],
    mu: &BigRational,
    beta: &BigRational,
    m_max: usize,
) -> Result<Vec<NormalizedGammaQuotient>> {
    if !mu.is_positive() {
        return precondition(format!("the exact path needs mu > 0 (mu = {mu})"));
    }
    if !beta.is_positive() {
        return precondition(format!("beta must be positive (beta = {beta})"));
    }
    let (p, q) = lemma4_bases(mu, beta);
    let p1 = pochhammer_table(&p[0], m_max);
    let pb = pochhammer_table(&p[1], m_max);
    let q0 = pochhammer_table(&q[0], m_max);
    let qb1 = pochhammer_table(&q[1], m_max);
    let term = |k: usize| g.get(k).cloned().unwrap_or_else(BigRational::zero);
    (0..=m_max)
        .map(|m| {
            let mut lead = BigRational::zero();
            let mut trail = BigRational::zero();
            for k in 0..=m {
                let w = term(k) * term(m - k);
                if w.is_zero() {
                    continue;
                }
                lead += &w / (&p1[k] * &pb[m - k]);
                trail += &w / (&q0[k] * &qb1[m - k]);
            }
            NormalizedGammaQuotient::new(lead, p.clone(), trail, q.clone())
        })
        .collect()
}

pub(crate) fn exact_params(pairs: &[(&str, &BigRational)], m_max: usize) -> Params {
    let mut p: Params = pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Quantity::Exact((*v).clone())))
        .collect();
    p.insert("m_max".into(), Quantity::Integer(m_max as i64));
    p
}

pub(crate) fn coefficient_quantity(c: &NormalizedGammaQuotient) -> Quantity {
    match c.normalized_value() {
        Some(v) => Quantity::Exact(v),
        None => Quantity::Real(c.normalized_lower_f64()),
    }
}

/// Folds per-coefficient signs into one check result.
///
/// Coefficients below index `2L`, with `L` leading zeros of the sequence, vanish
/// identically and are only required to be non-negative.
fn judge(
    name: &str,
    params: Params,
    coeffs: &[NormalizedGammaQuotient],
    leading_zeros: usize,
    hypotheses_hold: bool,
) -> CheckResult {
    let certainty = coeffs.iter().map(|c| c.certainty()).max().unwrap_or(Certainty::Exact);
    let id = format!("{name}.{}", certainty.suffix());
    let mut undecided = false;
    let mut first_bad = None;
    for (m, c) in coeffs.iter().enumerate() {
        let ok = match c.sign() {
            Sign::Positive => true,
            Sign::Zero => m < 2 * leading_zeros,
            Sign::Negative => false,
            Sign::Undecided => {
                undecided = true;
                true
            }
        };
        if !ok && first_bad.is_none() {
            first_bad = Some(m);
        }
    }
    let margin = coeffs
        .iter()
        .enumerate()
        .filter(|(m, _)| *m >= 2 * leading_zeros)
        .map(|(_, c)| coefficient_quantity(c))
        .min_by(|x, y| x.numeric_cmp(y));
    if let Some(m) = first_bad {
        let c = &coeffs[m];
        let mut at = params.clone();
        at.insert("m".into(), Quantity::Integer(m as i64));
        let detail = format!(
            "coefficient {m} is {:?} (normalized value ≈ {:e})",
            c.sign(),
            c.normalized_f64()
        );
        let status = if hypotheses_hold {
            Status::Fail
        } else {
            Status::HypothesisViolation
        };
        return CheckResult {
            check_id: id,
            params,
            status,
            margin,
            counterexample: Some(Counterexample {
                params: at,
                value: coefficient_quantity(c),
                detail,
            }),
        };
    }
    let status = if undecided {
        Status::Skipped
    } else if hypotheses_hold {
        Status::Pass
    } else {
        Status::HypothesisViolation
    };
    CheckResult {
        check_id: id,
        params,
        status,
        margin: if status == Status::Skipped { None } else { margin },
        counterexample: None,
    }
}

/// Verifies `φ_m > 0` for `m ≤ m_max` in rational arithmetic.
///
/// Sequences that are not log-concave without internal zeros are still evaluated;
/// their outcome is reported as a hypothesis violation rather than a failure.
pub fn phi_positivity_exact<T: Real>(
    seq: &CoefficientSequence<T>,
    mu: &BigRational,
    a: &BigRational,
    b: &BigRational,
    m_max: usize,
) -> Result<CheckResult> {
    let Some(f) = seq.exact_prefix(m_max + 1) else {
        return precondition("phi_positivity_exact needs a sequence with an exact view");
    };
    let coeffs = phi_coefficients_exact(&f, mu, a, b, m_max)?;
    let params = exact_params(&[("mu", mu), ("a", a), ("b", b)], m_max);
    Ok(judge(
        "phi_positivity",
        params,
        &coeffs,
        seq.leading_zero_count(),
        seq.is_doubly_positive(),
    ))
}

/// Verifies `λ_m > 0` for `m ≤ m_max` in rational arithmetic.
pub fn lambda_positivity_exact<T: Real>(
    seq: &CoefficientSequence<T>,
    mu: &BigRational,
    beta: &BigRational,
    m_max: usize,
) -> Result<CheckResult> {
    let Some(g) = seq.exact_prefix(m_max + 1) else {
        return precondition("lambda_positivity_exact needs a sequence with an exact view");
    };
    let coeffs = lambda_coefficients_exact(&g, mu, beta, m_max)?;
    let params = exact_params(&[("mu", mu), ("beta", beta)], m_max);
    Ok(judge(
        "lambda_positivity",
        params,
        &coeffs,
        seq.leading_zero_count(),
        seq.is_doubly_positive(),
    ))
}

/// `f64` view of exact coefficients, un-normalized, for comparison with the floating Cauchy product.
pub fn coefficients_to_f64(coeffs: &[NormalizedGammaQuotient]) -> Vec<f64> {
    coeffs
        .iter()
        .map(|c| {
            let [p1, p2] = &c.lead_args;
            let norm = crate::gamma::recip_gamma(to_f64(p1)) * crate::gamma::recip_gamma(to_f64(p2));
            c.normalized_f64() * norm
        })
        .collect()
}
