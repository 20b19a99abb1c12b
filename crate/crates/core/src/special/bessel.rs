use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{precondition, Error, Result};
use crate::exact::{phi_coefficients_exact, phi_positivity_exact, NormalizedGammaQuotient};
use crate::rational::to_f64;
use crate::report::{relative_gap, CheckResult, Params, Quantity, DEFAULT_RELATIVE_TOLERANCE};
use crate::scalar::Real;
use crate::series::{
    eval_f, generalized_turanian, phi_coefficients, turan_bound_constants, CoefficientSequence, Form, SequenceFamily,
    TuranianValue,
};

/// Largest argument accepted before `I_ν(u) ~ e^u` leaves the `f64` range.
pub const U_MAX: f64 = 700.0;

fn u_max<T: Real>() -> T {
    // ln(max) with headroom for the power prefactor.
    T::lit(U_MAX).min(T::max_value().ln() * T::lit(0.95))
}

fn ones<T: Real>() -> CoefficientSequence<T> {
    CoefficientSequence::family(SequenceFamily::Ones).expect("constant family is valid")
}

fn check_u<T: Real>(u: T) -> Result<()> {
    if !(u >= T::zero()) {
        return Err(Error::Domain {
            function: "bessel_i",
            value: u.as_f64(),
            expected: "u >= 0",
        });
    }
    if u > u_max::<T>() {
        return Err(Error::Overflow(format!(
            "I_nu(u) for u = {u} exceeds the configured range"
        )));
    }
    Ok(())
}

/// Modified Bessel function `I_ν(u) = (u/2)^ν f(ν+1, (u/2)²)` with `f_n ≡ 1`.
///
/// Orders in `(−2, −1]` go through the same series; the reciprocal gamma absorbs
/// the pole of the leading terms.
pub fn bessel_i<T: Real>(nu: T, u: T) -> Result<T> {
    if !(nu > -T::lit(2.0)) {
        return precondition(format!("bessel_i needs nu > -2 (nu = {nu})"));
    }
    check_u(u)?;
    if u == T::zero() {
        return Ok(if nu == T::zero() {
            T::one()
        } else if nu > T::zero() || nu == nu.round() {
            T::zero()
        } else {
            T::infinity()
        });
    }
    let half = u / T::lit(2.0);
    let s = eval_f(&ones(), nu + T::one(), half * half)?;
    Ok(half.powf(nu) * s.value)
}

fn check_turanian_params<T: Real>(nu: T, epsilon: T) -> Result<()> {
    if !(nu >= -T::one() && nu - epsilon >= -T::lit(2.0) && epsilon >= T::zero()) {
        return precondition(format!(
            "Bessel Turanian needs nu >= -1, epsilon >= 0, nu - epsilon >= -2 (nu = {nu}, epsilon = {epsilon})"
        ));
    }
    Ok(())
}

/// `(u/2)^{−2ν} Δ_ε(ν,u) = f(ν+1)² − f(ν+1+ε) f(ν+1−ε)` at `x = (u/2)²`.
pub fn bessel_turanian_scaled<T: Real>(nu: T, epsilon: T, u: T) -> Result<TuranianValue<T>> {
    check_turanian_params(nu, epsilon)?;
    check_u(u)?;
    let half = u / T::lit(2.0);
    generalized_turanian(&ones(), nu + T::one(), epsilon, half * half, Form::F)
}

/// `Δ_ε(ν,u) = I_ν(u)² − I_{ν+ε}(u) I_{ν−ε}(u)`.
///
/// At `u = 0` with `ν < 0` the prefactor `(u/2)^{2ν}` is infinite; the value is
/// then read off the lowest nonzero Maclaurin coefficient.
pub fn bessel_turanian<T: Real>(nu: T, epsilon: T, u: T) -> Result<T> {
    let scaled = bessel_turanian_scaled(nu, epsilon, u)?.value;
    if u > T::zero() {
        let half = u / T::lit(2.0);
        return Ok(half.powf(T::lit(2.0) * nu) * scaled);
    }
    if nu == T::zero() {
        return Ok(scaled);
    }
    if nu > T::zero() {
        return Ok(T::zero());
    }
    let coeffs = bessel_maclaurin(nu, epsilon, 8)?;
    let noise = T::lit(64.0) * T::epsilon();
    match coeffs.iter().position(|c| c.abs() > noise) {
        None => Ok(T::zero()),
        Some(l) => {
            let power = nu + T::of_usize(l);
            Ok(if power > T::zero() {
                T::zero()
            } else if power == T::zero() {
                coeffs[l]
            } else {
                coeffs[l].signum() * T::infinity()
            })
        }
    }
}

/// Maclaurin coefficients of `(u/2)^{−2ν}Δ_ε(ν,u)` in powers of `(u/2)²`.
///
/// These are the `φ_m` of `f ≡ 1` with `μ = ν+1−ε` and `a = b = ε`.
pub fn bessel_maclaurin<T: Real>(nu: T, epsilon: T, m_max: usize) -> Result<Vec<T>> {
    check_turanian_params(nu, epsilon)?;
    if epsilon == T::zero() {
        return Ok(vec![T::zero(); m_max + 1]);
    }
    phi_coefficients(&ones(), nu + T::one() - epsilon, epsilon, epsilon, m_max)
}

/// Exact version of [`bessel_maclaurin`], available when `ν+1−ε > 0`.
pub fn bessel_maclaurin_exact(
    nu: &BigRational,
    epsilon: &BigRational,
    m_max: usize,
) -> Result<Vec<NormalizedGammaQuotient>> {
    let one = BigRational::from_integer(1.into());
    let mu = nu + &one - epsilon;
    if !mu.is_positive() {
        return precondition(format!(
            "exact Bessel coefficients need nu + 1 - epsilon > 0 (got {mu})"
        ));
    }
    let f = vec![one; m_max + 1];
    phi_coefficients_exact(&f, &mu, epsilon, epsilon, m_max)
}

/// Positivity of the Maclaurin coefficients of `(u/2)^{−2ν}Δ_ε(ν,u)` up to `m_max`.
///
/// Exact when `ν+1−ε > 0`, floating otherwise (the boundary `ν = −1` and part of
/// the `ε > 1` regime). On the boundary some coefficients vanish identically: at
/// `ν = −1`, `φ_1 = 0` for every `ε`. Coefficients within rounding of zero are
/// counted as zeros and reported under `zero_coefficients`; anything clearly
/// negative fails.
pub fn bessel_maclaurin_check(nu: &BigRational, epsilon: &BigRational, m_max: usize) -> Result<CheckResult> {
    let wide = if *epsilon > BigRational::one() { ".eps_gt_1" } else { "" };
    let mut p = Params::new();
    p.insert("nu".into(), Quantity::Exact(nu.clone()));
    p.insert("epsilon".into(), Quantity::Exact(epsilon.clone()));
    p.insert("m_max".into(), Quantity::Integer(m_max as i64));
    let one = BigRational::one();
    let mu = nu + &one - epsilon;
    let (nu_f, eps_f) = (to_f64(nu), to_f64(epsilon));
    if check_turanian_params(nu_f, eps_f).is_err() || !epsilon.is_positive() {
        return Ok(CheckResult::hypothesis_violation(format!("bessel.maclaurin{wide}"), p));
    }
    if mu.is_positive() {
        let ones = ones::<f64>();
        let r = phi_positivity_exact(&ones, &mu, epsilon, epsilon, m_max)?;
        let suffix = r.check_id.rsplit('.').next().unwrap_or("exact").to_string();
        let mut r = r;
        r.check_id = format!("bessel.maclaurin{wide}.{suffix}");
        r.params = p.clone();
        if let Some(c) = r.counterexample.as_mut() {
            let m = c.params.get("m").cloned();
            c.params = p.clone();
            if let Some(m) = m {
                c.params.insert("m".into(), m);
            }
        }
        return Ok(r);
    }
    let id = format!("bessel.maclaurin{wide}.float");
    let c = bessel_maclaurin(nu_f, eps_f, m_max)?;
    let scale = coefficient_magnitudes(nu_f, eps_f, m_max);
    let mut zeros = 0_i64;
    let mut min = f64::INFINITY;
    for (m, (v, s)) in c.iter().zip(&scale).enumerate() {
        if v.abs() <= 64.0 * f64::EPSILON * s {
            zeros += 1;
        } else if *v > 0.0 {
            min = min.min(*v);
        } else {
            let mut r = CheckResult::fail(id, p, *v, format!("coefficient {m} is {v:e}"));
            if let Some(ce) = r.counterexample.as_mut() {
                ce.params.insert("m".into(), Quantity::Integer(m as i64));
            }
            return Ok(r);
        }
    }
    if zeros > 0 {
        p.insert("zero_coefficients".into(), Quantity::Integer(zeros));
    }
    Ok(CheckResult::pass(id, p, if min.is_finite() { min } else { 0.0 }))
}

/// `Σ_k |terms|` of each floating coefficient, the scale its rounding error is measured against.
fn coefficient_magnitudes(nu: f64, epsilon: f64, m_max: usize) -> Vec<f64> {
    use crate::gamma::recip_gamma;
    let mu = nu + 1.0 - epsilon;
    let rg = |base: f64| -> Vec<f64> { (0..=m_max).map(|j| recip_gamma(base + j as f64).abs()).collect() };
    let (ra, r0, rab) = (rg(mu + epsilon), rg(mu), rg(mu + 2.0 * epsilon));
    let mut inv_fact = vec![1.0_f64; m_max + 1];
    for k in 1..=m_max {
        inv_fact[k] = inv_fact[k - 1] / k as f64;
    }
    (0..=m_max)
        .map(|m| {
            (0..=m)
                .map(|k| inv_fact[k] * inv_fact[m - k] * (ra[k] * ra[m - k] + r0[m - k] * rab[k]))
                .sum()
        })
        .collect()
}

/// `(u/2)^{2ν} A_ε(ν+1) ≤ Δ_ε(ν,u) ≤ B_ε(ν+1) I_ν(u)²`.
///
/// Both sides are compared after dividing by `(u/2)^{2ν}`, which leaves the
/// margins unchanged. For `u > 0` the inequalities are strict; at `u = 0` they
/// hold with equality. Regimes with `ε > 1` get a distinct check id.
pub fn bessel_bounds_check<T: Real>(nu: T, epsilon: T, u: T) -> Result<[CheckResult; 2]> {
    let wide = if epsilon > T::one() { ".eps_gt_1" } else { "" };
    let lo = format!("bessel.lower{wide}");
    let hi = format!("bessel.upper{wide}");
    let p: Params = [("nu", nu), ("epsilon", epsilon), ("u", u)]
        .iter()
        .map(|(k, v)| (k.to_string(), Quantity::Real(v.as_f64())))
        .collect();
    if check_turanian_params(nu, epsilon).is_err() {
        return Ok([
            CheckResult::hypothesis_violation(lo, p.clone()),
            CheckResult::hypothesis_violation(hi, p),
        ]);
    }
    let mu = nu + T::one();
    let half = u / T::lit(2.0);
    let x = half * half;
    let (a, b) = turan_bound_constants(mu, epsilon)?;
    let d = bessel_turanian_scaled(nu, epsilon, u)?;
    let f = eval_f(&ones(), mu, x)?;
    let upper_bound = if b.is_infinite() { b } else { b * f.value * f.value };
    let eps16 = T::lit(16.0) * T::epsilon();
    let noise_lo = d.error_bound + eps16 * (d.scale + a.abs());
    let noise_hi = if b.is_infinite() {
        T::zero()
    } else {
        d.error_bound + b * T::lit(2.0) * f.value.abs() * f.tail_bound + eps16 * (d.scale + upper_bound.abs())
    };
    let verdict = |id: String, lhs: T, rhs: T, noise: T| {
        let (l, r) = (lhs.as_f64(), rhs.as_f64());
        let margin = relative_gap(l, r);
        let diff = (rhs - lhs).as_f64();
        if u > T::zero() {
            if diff.abs() <= noise.as_f64() && !(rhs.is_infinite()) {
                CheckResult::skipped(id, p.clone())
            } else {
                CheckResult::from_margin(id, p.clone(), margin, true, 0.0, || format!("expected {l:e} < {r:e}"))
            }
        } else {
            let ok = diff >= -(noise.as_f64() + DEFAULT_RELATIVE_TOLERANCE * l.abs().max(r.abs()));
            if ok {
                CheckResult::pass(id, p.clone(), margin)
            } else {
                CheckResult::fail(id, p.clone(), margin, format!("expected {l:e} <= {r:e}"))
            }
        }
    };
    Ok([
        verdict(lo, a, d.value, noise_lo),
        verdict(hi, d.value, upper_bound, noise_hi),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Sign;
    use crate::rational::{int, rat};

    #[test]
    fn bessel_values() {
        assert_eq!(bessel_i(0.0_f64, 0.0).unwrap(), 1.0);
        assert!((bessel_i(0.0_f64, 1.0).unwrap() - 1.266_065_877_752_008_4).abs() < 1e-15);
        let closed = (2.0 / std::f64::consts::PI).sqrt() * 1.0_f64.sinh();
        assert!((bessel_i(0.5_f64, 1.0).unwrap() - closed).abs() < 1e-15);
        let (a, b) = (bessel_i(-1.0_f64, 3.0).unwrap(), bessel_i(1.0_f64, 3.0).unwrap());
        assert!((a - b).abs() < 1e-14 * b);
        assert!(matches!(bessel_i(0.0_f64, 800.0), Err(Error::Overflow(_))));
    }

    #[test]
    fn turanian_values() {
        let d = bessel_turanian(0.0_f64, 1.0, 2.0).unwrap();
        assert!((d - 2.666_383_547_296_083_7).abs() < 1e-14);
        assert_eq!(bessel_turanian(0.0_f64, 1.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_turanian(2.0_f64, 0.0, 3.0).unwrap(), 0.0);
        assert_eq!(bessel_turanian(-1.0_f64, 1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn bounds_examples() {
        let [lo, hi] = bessel_bounds_check(0.0_f64, 1.0, 2.0).unwrap();
        assert!(lo.is_pass() && hi.is_pass(), "{lo:?} {hi:?}");
        let [lo, hi] = bessel_bounds_check(1.0_f64, 1.0, 0.0).unwrap();
        assert!(lo.is_pass() && hi.is_pass());
        let [lo, hi] = bessel_bounds_check(-1.0_f64, 1.0, 1.0).unwrap();
        assert!(lo.is_pass() && hi.is_pass(), "{lo:?} {hi:?}");
    }

    #[test]
    fn maclaurin_check_paths() {
        let r = bessel_maclaurin_check(&rat(1, 2), &int(1), 30).unwrap();
        assert_eq!((r.check_id.as_str(), r.is_pass()), ("bessel.maclaurin.exact", true));
        let r = bessel_maclaurin_check(&int(-1), &rat(1, 4), 30).unwrap();
        assert_eq!(
            (r.check_id.as_str(), r.is_pass()),
            ("bessel.maclaurin.float", true),
            "{r:?}"
        );
        // φ_1 vanishes identically at ν = −1.
        assert_eq!(r.params.get("zero_coefficients"), Some(&Quantity::Integer(1)));
        let r = bessel_maclaurin_check(&int(-1), &int(1), 30).unwrap();
        assert!(r.is_pass(), "{r:?}");
        assert_eq!(r.params.get("zero_coefficients"), Some(&Quantity::Integer(2)));
        let r = bessel_maclaurin_check(&int(2), &rat(5, 2), 30).unwrap();
        assert!(r.check_id.starts_with("bessel.maclaurin.eps_gt_1"));
    }

    #[test]
    fn maclaurin_agrees_with_exact() {
        let exact = bessel_maclaurin_exact(&rat(1, 2), &int(1), 12).unwrap();
        assert!(exact.iter().all(|c| c.sign() == Sign::Positive));
        let float = bessel_maclaurin(0.5_f64, 1.0, 12).unwrap();
        let back = crate::exact::coefficients_to_f64(&exact);
        for (e, f) in back.iter().zip(&float) {
            assert!((e - f).abs() <= 1e-13 * f.abs());
        }
    }
}
