use crate::error::{precondition, Result};
use crate::report::{CheckResult, Quantity};
use crate::scalar::Real;
use crate::series::{disc_wright_check, eval_g, turanian_bounds_check, CoefficientSequence, Form};

/// `g_k = (η)_k / k!` for real `η`.
pub fn pochhammer_ratio_sequence<T: Real>(eta: T) -> Result<CoefficientSequence<T>> {
    if !(eta > T::zero()) {
        return precondition(format!("(eta)_k/k! needs eta > 0 (eta = {eta})"));
    }
    CoefficientSequence::from_fn(move |k| {
        (0..k).fold(T::one(), |acc, j| acc * (eta + T::of_usize(j)) / T::of_usize(j + 1))
    })
}

/// `R_{η,ν}(x) = x^{ν+1} Σ (η)_k xᵏ/(Γ(ν+2+k) k!)`.
///
/// For `η = 1` and integer `ν = n` this is `eˣ − Σ_{k≤n} xᵏ/k!`.
pub fn exp_remainder<T: Real>(eta: T, nu: T, x: T) -> Result<T> {
    if !(eta >= T::one()) {
        return precondition(format!("exp_remainder needs eta >= 1 (eta = {eta})"));
    }
    if !(nu > -T::lit(2.0)) {
        return precondition(format!("exp_remainder needs nu > -2 (nu = {nu})"));
    }
    let seq = pochhammer_ratio_sequence(eta)?;
    let g = eval_g(&seq, nu + T::lit(2.0), x)?.value;
    if x == T::zero() {
        let power = nu + T::one();
        return Ok(if power > T::zero() {
            T::zero()
        } else if power == T::zero() {
            g
        } else {
            T::infinity()
        });
    }
    Ok(x.powf(nu + T::one()) * g)
}

fn relabel(r: CheckResult, id: &str, eta: T64, nu: T64) -> CheckResult {
    let mut r = r;
    r.check_id = id.to_string();
    r.params.remove("mu");
    r.params.remove("epsilon");
    r.params.remove("s");
    r.params.insert("eta".into(), Quantity::Real(eta));
    r.params.insert("nu".into(), Quantity::Real(nu));
    if let Some(c) = r.counterexample.as_mut() {
        c.params = r.params.clone();
    }
    r
}

type T64 = f64;

/// `x^{2ν+2}/((ν+2)Γ(ν+2)²) ≤ R_ν² − R_{ν+1}R_{ν−1} ≤ R_ν²/(ν+2)`.
///
/// Dividing by `x^{2ν+2}` leaves the g-form Turanian sandwich at `μ = ν+2`,
/// whose margins are the ones reported.
pub fn exp_remainder_turan_bounds<T: Real>(eta: T, nu: T, x: T) -> Result<[CheckResult; 2]> {
    let seq = pochhammer_ratio_sequence(eta)?;
    let [lo, hi] = turanian_bounds_check(&seq, nu + T::lit(2.0), T::one(), x, Form::G)?;
    let mut out = [
        relabel(lo, "exp_remainder.lower", eta.as_f64(), nu.as_f64()),
        relabel(hi, "exp_remainder.upper", eta.as_f64(), nu.as_f64()),
    ];
    if eta < T::one() {
        for r in &mut out {
            *r = CheckResult::hypothesis_violation(r.check_id.clone(), r.params.clone());
        }
    }
    Ok(out)
}

/// `R_{ν+1}R_{ν+s} − R_ν R_{ν+s+1} > 0` for `x > 0`, through the g-form at `μ = ν+2`.
///
/// The powers of `x` match on both products and cancel.
pub fn exp_remainder_disc_wright<T: Real>(eta: T, nu: T, s: T, x: T) -> Result<CheckResult> {
    let seq = pochhammer_ratio_sequence(eta)?;
    let r = disc_wright_check(&seq, nu + T::lit(2.0), s, x)?;
    let mut r = relabel(r, "exp_remainder.disc_wright", eta.as_f64(), nu.as_f64());
    r.params.insert("s".into(), Quantity::Real(s.as_f64()));
    if eta < T::one() && r.status != crate::report::Status::HypothesisViolation {
        r = CheckResult::hypothesis_violation(r.check_id.clone(), r.params.clone());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn remainder_values() {
        assert!((exp_remainder(1.0_f64, 0.0, 1.0).unwrap() - (E - 1.0)).abs() < 1e-15);
        assert!((exp_remainder(1.0_f64, -1.0, 1.0).unwrap() - E).abs() < 1e-15);
        assert!((exp_remainder(1.0_f64, 2.0, 1.5).unwrap() - (1.5_f64.exp() - 1.0 - 1.5 - 1.125)).abs() < 1e-14);
        assert_eq!(exp_remainder(2.0_f64, 0.5, 0.0).unwrap(), 0.0);
        assert_eq!(exp_remainder(1.0_f64, -1.0, 0.0).unwrap(), 1.0);
        assert!(exp_remainder(0.5_f64, 0.0, 1.0).is_err());
    }

    #[test]
    fn sandwich_holds() {
        for (eta, nu, x) in [(1.0, 0.0, 1.0), (2.0, 1.0, 2.0), (1.0, 0.0, 0.0), (3.5, -1.5, 0.7)] {
            let [lo, hi] = exp_remainder_turan_bounds(eta, nu, x).unwrap();
            assert!(lo.is_pass() && hi.is_pass(), "{lo:?} {hi:?}");
            assert_eq!(lo.check_id, "exp_remainder.lower");
        }
    }

    #[test]
    fn disc_wright_holds() {
        let r = exp_remainder_disc_wright(1.5_f64, 0.0, 0.5, 2.0).unwrap();
        assert!(r.is_pass(), "{r:?}");
    }
}
