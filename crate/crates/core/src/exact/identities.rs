use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quotient::NormalizedGammaQuotient;
use crate::compensated::{product_difference, CompensatedSum, DoubleWord, GuardedDifference};
use crate::error::{precondition, Error, Result};
use crate::gamma::{pochhammer_rational, recip_gamma};
use crate::rational::{factorials, int, of_usize};
use crate::scalar::Real;

/// `(x)_0, …, (x)_n`.
pub fn pochhammer_table(x: &BigRational, n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigRational::one();
    out.push(acc.clone());
    for k in 0..n {
        acc *= x + of_usize(k);
        out.push(acc.clone());
    }
    out
}

/// Term-by-term and closed-form sides of `Σ_k (−m)_k(a)_k/((c)_k k!) = (c−a)_m/(c)_m`.
pub fn chu_vandermonde(m: usize, a: &BigRational, c: &BigRational) -> Result<(BigRational, BigRational)> {
    let cs = pochhammer_table(c, m);
    if let Some(k) = cs.iter().position(|v| v.is_zero()) {
        return Err(Error::DivisionByZero(format!("(c)_{k} vanishes for c = {c}")));
    }
    let minus_m = -of_usize(m);
    let ms = pochhammer_table(&minus_m, m);
    let as_ = pochhammer_table(a, m);
    let fs = factorials(m);
    let lhs = (0..=m).fold(BigRational::zero(), |acc, k| acc + &ms[k] * &as_[k] / (&cs[k] * &fs[k]));
    let rhs = pochhammer_rational(&(c - a), m) / &cs[m];
    Ok((lhs, rhs))
}

fn require_positive(mu: &BigRational) -> Result<()> {
    if !mu.is_positive() {
        return precondition(format!(
            "the exact path needs mu > 0 (mu = {mu}); use the floating fallback"
        ));
    }
    Ok(())
}

fn require_nonnegative(name: &str, v: &BigRational) -> Result<()> {
    if v.is_negative() {
        return precondition(format!("{name} must be non-negative ({name} = {v})"));
    }
    Ok(())
}

/// Bases shared by the gamma-sum identity and the f-form coefficients.
pub(crate) fn lemma3_bases(mu: &BigRational, a: &BigRational, b: &BigRational) -> ([BigRational; 2], [BigRational; 2]) {
    ([mu + a, mu + b], [mu.clone(), mu + a + b])
}

/// The weighted gamma sum
/// `Σ_k [1/(Γ(k+μ+a)Γ(m−k+μ+b)) − 1/(Γ(m−k+μ)Γ(k+μ+a+b))]/(k!(m−k)!)`
/// summed term by term.
pub fn lemma3_sum(m: usize, mu: &BigRational, a: &BigRational, b: &BigRational) -> Result<NormalizedGammaQuotient> {
    require_positive(mu)?;
    require_nonnegative("a", a)?;
    require_nonnegative("b", b)?;
    let (p, q) = lemma3_bases(mu, a, b);
    let pa = pochhammer_table(&p[0], m);
    let pb = pochhammer_table(&p[1], m);
    let q0 = pochhammer_table(&q[0], m);
    let qab = pochhammer_table(&q[1], m);
    let fs = factorials(m);
    let mut lead = BigRational::zero();
    let mut trail = BigRational::zero();
    for k in 0..=m {
        let w = &fs[k] * &fs[m - k];
        lead += (&w * &pa[k] * &pb[m - k]).recip();
        trail += (&w * &q0[m - k] * &qab[k]).recip();
    }
    NormalizedGammaQuotient::new(lead, p, trail, q)
}

/// Closed form of [`lemma3_sum`] from the Chu–Vandermonde evaluation,
/// `C·[1/(Γ(m+μ+a)Γ(m+μ+b)) − 1/(Γ(m+μ)Γ(m+μ+a+b))]` with `C = (2μ+a+b+m−1)_m/m!`.
pub fn lemma3_closed_form(
    m: usize,
    mu: &BigRational,
    a: &BigRational,
    b: &BigRational,
) -> Result<NormalizedGammaQuotient> {
    require_positive(mu)?;
    require_nonnegative("a", a)?;
    require_nonnegative("b", b)?;
    let (p, q) = lemma3_bases(mu, a, b);
    let two_mu = mu + mu;
    let c = pochhammer_rational(&(two_mu + a + b + of_usize(m) - int(1)), m) / &factorials(m)[m];
    let lead = &c / (pochhammer_rational(&p[0], m) * pochhammer_rational(&p[1], m));
    let trail = &c / (pochhammer_rational(&q[0], m) * pochhammer_rational(&q[1], m));
    NormalizedGammaQuotient::new(lead, p, trail, q)
}

pub(crate) fn lemma4_bases(mu: &BigRational, beta: &BigRational) -> ([BigRational; 2], [BigRational; 2]) {
    ([mu + int(1), mu + beta], [mu.clone(), mu + beta + int(1)])
}

/// Sum form and telescoped closed form of
/// `S_m(μ,β) = Σ_k [1/(Γ(k+μ+1)Γ(m−k+μ+β)) − 1/(Γ(k+μ)Γ(m−k+μ+β+1))]`.
///
/// Both share the bases of the sum form; the closed form has a zero trail.
/// Since `ρ = μ/(μ+β)` is rational, both normalized values are exact.
pub fn s_m(
    m: usize,
    mu: &BigRational,
    beta: &BigRational,
) -> Result<(NormalizedGammaQuotient, NormalizedGammaQuotient)> {
    require_positive(mu)?;
    require_nonnegative("beta", beta)?;
    let (p, q) = lemma4_bases(mu, beta);
    let sum = ordered_gamma_sum(m, p.clone(), q.clone())?;
    let num = pochhammer_rational(&p[1], m + 1) - pochhammer_rational(mu, m + 1);
    let den = pochhammer_rational(&p[0], m) * pochhammer_rational(&p[1], m + 1);
    let closed = NormalizedGammaQuotient::new(num / den, p, BigRational::zero(), q)?;
    Ok((sum, closed))
}

/// `Σ_k [1/(Γ(k+p1)Γ(m−k+p2)) − 1/(Γ(k+q1)Γ(m−k+q2))]`, unweighted.
fn ordered_gamma_sum(m: usize, p: [BigRational; 2], q: [BigRational; 2]) -> Result<NormalizedGammaQuotient> {
    let p1 = pochhammer_table(&p[0], m);
    let p2 = pochhammer_table(&p[1], m);
    let q1 = pochhammer_table(&q[0], m);
    let q2 = pochhammer_table(&q[1], m);
    let mut lead = BigRational::zero();
    let mut trail = BigRational::zero();
    for k in 0..=m {
        lead += (&p1[k] * &p2[m - k]).recip();
        trail += (&q1[k] * &q2[m - k]).recip();
    }
    NormalizedGammaQuotient::new(lead, p, trail, q)
}

/// `Σ_k [1/(Γ(k+μ+α)Γ(m−k+μ+β)) − 1/(Γ(k+μ)Γ(m−k+μ+α+β))]`.
///
/// For `α = 1` this is exactly the sum form of [`s_m`].
pub fn conjecture1_sum(
    m: usize,
    mu: &BigRational,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<NormalizedGammaQuotient> {
    require_positive(mu)?;
    if !(alpha.is_positive() && beta.is_positive()) {
        return precondition(format!(
            "alpha and beta must be positive (alpha = {alpha}, beta = {beta})"
        ));
    }
    ordered_gamma_sum(m, [mu + alpha, mu + beta], [mu.clone(), mu + alpha + beta])
}

// Floating fallbacks, used where Γ takes negative arguments.

fn guarded_sum<T: Real>(pairs: impl Iterator<Item = (T, T, T, T)>) -> GuardedDifference<T> {
    let mut lead = CompensatedSum::new();
    let mut trail = CompensatedSum::new();
    for (a, b, c, d) in pairs {
        lead.add(a * b);
        trail.add(c * d);
    }
    let one = DoubleWord::from_single(T::one());
    product_difference(lead.double_word(), one, trail.double_word(), one)
}

/// [`lemma3_sum`] in floating point for any admissible `μ ≥ −1`.
pub fn lemma3_sum_float<T: Real>(m: usize, mu: T, a: T, b: T) -> GuardedDifference<T> {
    let fact: Vec<T> = (0..=m)
        .scan(T::one(), |acc, k| {
            if k > 0 {
                *acc *= T::of_usize(k);
            }
            Some(*acc)
        })
        .collect();
    guarded_sum((0..=m).map(|k| {
        let j = m - k;
        let w = (fact[k] * fact[j]).recip();
        let (kk, jj) = (T::of_usize(k), T::of_usize(j));
        (
            w * recip_gamma(kk + mu + a),
            recip_gamma(jj + mu + b),
            w * recip_gamma(jj + mu),
            recip_gamma(kk + mu + a + b),
        )
    }))
}

/// `S_m(μ,β)` in floating point.
pub fn s_m_float<T: Real>(m: usize, mu: T, beta: T) -> GuardedDifference<T> {
    conjecture1_sum_float(m, mu, T::one(), beta)
}

/// [`conjecture1_sum`] in floating point.
pub fn conjecture1_sum_float<T: Real>(m: usize, mu: T, alpha: T, beta: T) -> GuardedDifference<T> {
    guarded_sum((0..=m).map(|k| {
        let (kk, jj) = (T::of_usize(k), T::of_usize(m - k));
        (
            recip_gamma(kk + mu + alpha),
            recip_gamma(jj + mu + beta),
            recip_gamma(kk + mu),
            recip_gamma(jj + mu + alpha + beta),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Sign;
    use crate::rational::rat;

    #[test]
    fn chu_vandermonde_examples() {
        assert_eq!(chu_vandermonde(0, &rat(7, 3), &rat(1, 2)).unwrap(), (int(1), int(1)));
        assert_eq!(chu_vandermonde(1, &int(2), &int(3)).unwrap(), (rat(1, 3), rat(1, 3)));
        assert_eq!(chu_vandermonde(2, &int(1), &int(2)).unwrap(), (rat(1, 3), rat(1, 3)));
        assert!(matches!(
            chu_vandermonde(3, &int(1), &int(-1)),
            Err(Error::DivisionByZero(_))
        ));
    }

    #[test]
    fn lemma3_examples() {
        let s = lemma3_sum(1, &int(1), &int(1), &int(1)).unwrap();
        assert_eq!(s.exact_value(), Some(rat(1, 3)));
        let c = lemma3_closed_form(1, &int(1), &int(1), &int(1)).unwrap();
        assert_eq!(s.exactly_equals(&c), Some(true));
        let zero = lemma3_sum(2, &int(1), &int(0), &int(1)).unwrap();
        assert_eq!(zero.sign(), Sign::Zero);
        assert_eq!(
            lemma3_sum(0, &int(1), &int(1), &int(2)).unwrap().exact_value(),
            Some(rat(1, 3))
        );
        assert!(lemma3_sum(1, &int(0), &int(1), &int(1)).is_err());
    }

    #[test]
    fn s_m_examples() {
        let (s, c) = s_m(0, &int(1), &int(1)).unwrap();
        assert_eq!(s.exact_value(), Some(rat(1, 2)));
        assert_eq!(c.exact_value(), Some(rat(1, 2)));
        let (s, c) = s_m(1, &int(1), &int(1)).unwrap();
        assert_eq!(s.exact_value(), Some(rat(1, 3)));
        assert_eq!(s.normalized_value(), c.normalized_value());
        let (s, c) = s_m(4, &rat(2, 3), &int(0)).unwrap();
        assert_eq!((s.sign(), c.sign()), (Sign::Zero, Sign::Zero));
    }

    #[test]
    fn conjecture_examples() {
        let v = conjecture1_sum(1, &int(1), &int(1), &int(1)).unwrap();
        assert_eq!(v.exact_value(), Some(rat(1, 3)));
        let h = conjecture1_sum(0, &int(1), &rat(1, 2), &rat(1, 2)).unwrap();
        assert_eq!(h.sign(), Sign::Positive);
        let expected = 4.0 / std::f64::consts::PI - 1.0;
        // normalized by Γ(3/2)² = π/4
        assert!((h.normalized_f64() * 4.0 / std::f64::consts::PI - expected).abs() < 1e-12);
        let x = conjecture1_sum(5, &rat(1, 2), &rat(3, 4), &rat(5, 4)).unwrap();
        let y = conjecture1_sum(5, &rat(1, 2), &rat(5, 4), &rat(3, 4)).unwrap();
        assert_eq!((&x.lead, &x.trail), (&y.lead, &y.trail));
    }

    #[test]
    fn float_fallbacks_agree_with_exact() {
        let s = lemma3_sum_float(3, 1.0_f64, 1.0, 1.0).value;
        let e = crate::rational::to_f64(&lemma3_sum(3, &int(1), &int(1), &int(1)).unwrap().exact_value().unwrap());
        assert!((s - e).abs() < 1e-15);
        assert!(s_m_float(3, -0.5_f64, 0.75).value > 0.0);
        assert!(lemma3_sum_float(0, -1.0_f64, 1.5, 1.5).value > 0.0);
    }
}
