use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{precondition, Result};
use crate::report::{CheckResult, Quantity};
use crate::scalar::Real;
use crate::series::{eval_g, turanian_bounds_check, CoefficientSequence, Form};

/// `h_k = (ψ(a+k) − ψ(a)) (a)_k / k!`, with the digamma difference summed as `Σ_{j<k} 1/(a+j)`.
pub fn harmonic_weights<T: Real>(a: T) -> Result<CoefficientSequence<T>> {
    if !(a > T::zero()) {
        return precondition(format!("harmonic weights need a > 0 (a = {a})"));
    }
    if a < T::one() {
        log::warn!("a = {a} < 1: the harmonic weights need not be log-concave");
    }
    CoefficientSequence::from_fn(move |k| crate::series::harmonic_weighted_float(a, k))
}

/// `∂/∂a F̃(a;b;x) = Σ_k (ψ(a+k) − ψ(a)) (a)_k xᵏ / (Γ(b+k) k!)`, the g-form series of `h_k` at `μ = b`.
pub fn kummer_param_derivative<T: Real>(a: T, b: T, x: T) -> Result<T> {
    let seq = harmonic_weights(a)?;
    Ok(eval_g(&seq, b, x)?.value)
}

/// Exact `h_1² ≥ h_0h_2, …` up to `k_max`.
pub fn harmonic_weights_log_concave(a: &BigRational, k_max: usize) -> Result<bool> {
    if !a.is_positive() {
        return precondition(format!("harmonic weights need a > 0 (a = {a})"));
    }
    let h: Vec<BigRational> = (0..=k_max + 1)
        .map(|k| crate::series::harmonic_weighted_exact(a, k))
        .collect();
    Ok((1..=k_max).all(|k| &h[k] * &h[k] >= &h[k - 1] * &h[k + 1]))
}

/// `0 ≤ D(b)² − D(b+1)D(b−1) ≤ D(b)²/b` for the parameter derivative `D` at fixed `a`, `x`.
///
/// The lower constant vanishes because `h_0 = 0`.
pub fn param_derivative_turan_bounds<T: Real>(a: T, b: T, x: T) -> Result<[CheckResult; 2]> {
    let seq = harmonic_weights(a)?;
    let out = turanian_bounds_check(&seq, b, T::one(), x, Form::G)?;
    Ok(out.map(|mut r| {
        r.check_id = r.check_id.replacen("g_turanian", "param_derivative", 1);
        r.params.remove("epsilon");
        r.params.remove("mu");
        r.params.insert("a".into(), Quantity::Real(a.as_f64()));
        r.params.insert("b".into(), Quantity::Real(b.as_f64()));
        if let Some(c) = r.counterexample.as_mut() {
            c.params = r.params.clone();
        }
        r
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn derivative_values() {
        assert_eq!(kummer_param_derivative(1.0_f64, 1.0, 0.0).unwrap(), 0.0);
        let v = kummer_param_derivative(1.0_f64, 1.0, 1.0).unwrap();
        assert!((v - 2.165_382_215_326_936_4).abs() < 1e-14, "{v}");
    }

    #[test]
    fn exact_log_concavity() {
        for a in [int(1), rat(3, 2), int(2), int(5)] {
            assert!(harmonic_weights_log_concave(&a, 40).unwrap());
        }
    }

    #[test]
    fn sandwich_holds() {
        let [lo, hi] = param_derivative_turan_bounds(1.5_f64, 2.0, 1.0).unwrap();
        assert!(lo.is_pass() && hi.is_pass(), "{lo:?} {hi:?}");
        assert_eq!(hi.check_id, "param_derivative.upper");
    }

    #[test]
    fn float_weights_track_exact() {
        let a = rat(3, 2);
        let w = harmonic_weights(1.5_f64).unwrap();
        for k in 0..30 {
            let e = crate::rational::to_f64(&crate::series::harmonic_weighted_exact(&a, k));
            assert!((w.term(k) - e).abs() <= 1e-14 * e.max(1.0));
        }
        assert_eq!(crate::series::harmonic_difference(&int(1), 3), rat(11, 6));
    }
}
