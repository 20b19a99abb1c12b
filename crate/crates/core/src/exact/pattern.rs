use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::identities::{lemma3_bases, pochhammer_table};
use super::quotient::{Certainty, NormalizedGammaQuotient, Sign};
use crate::error::{precondition, Error, Result};

/// Signs of `M_0, …, M_{[m/2]}`.
///
/// Zeros are sign-neutral; a legal pattern reads `(−…−0…0+…+)` with a positive
/// last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    pub entries: Vec<NormalizedGammaQuotient>,
    pub signs: Vec<Sign>,
    pub change_count: usize,
    pub last_positive: bool,
}

/// Strict alternations among the nonzero decided signs.
pub fn sign_changes(signs: &[Sign]) -> usize {
    let mut prev = None;
    let mut changes = 0;
    for s in signs {
        if matches!(s, Sign::Positive | Sign::Negative) {
            if prev.is_some_and(|p| p != *s) {
                changes += 1;
            }
            prev = Some(*s);
        }
    }
    changes
}

impl SignPattern {
    pub fn new(entries: Vec<NormalizedGammaQuotient>) -> Self {
        let signs: Vec<Sign> = entries.iter().map(|e| e.sign()).collect();
        Self {
            change_count: sign_changes(&signs),
            last_positive: signs.last() == Some(&Sign::Positive),
            entries,
            signs,
        }
    }

    /// At most one change of sign, ending positive, with every sign decided.
    pub fn is_legal(&self) -> bool {
        self.change_count <= 1 && self.last_positive && self.is_decided()
    }

    pub fn is_decided(&self) -> bool {
        !self.signs.contains(&Sign::Undecided)
    }

    /// Normalized entries where the gamma ratio is rational.
    pub fn values(&self) -> Vec<Option<BigRational>> {
        self.entries.iter().map(|e| e.normalized_value()).collect()
    }

    pub fn certainty(&self) -> Certainty {
        self.entries
            .iter()
            .map(|e| e.certainty())
            .max()
            .unwrap_or(Certainty::Exact)
    }

    /// `Σ_k M_k/(k!(m−k)!)` over the shared bases.
    pub fn factorial_weighted_sum(&self, m: usize) -> Option<NormalizedGammaQuotient> {
        let fs = crate::rational::factorials(m);
        NormalizedGammaQuotient::weighted_sum(
            self.entries
                .iter()
                .enumerate()
                .map(|(k, e)| ((&fs[k] * &fs[m - k]).recip(), e)),
        )
    }

    /// `Σ_k M_k`.
    pub fn plain_sum(&self) -> Option<NormalizedGammaQuotient> {
        NormalizedGammaQuotient::weighted_sum(self.entries.iter().map(|e| (BigRational::from_integer(1.into()), e)))
    }
}

/// `M_0(a,b,μ), …, M_{[m/2]}(a,b,μ)` normalized by `Γ(μ+a)Γ(μ+b)`.
///
/// For `k < m/2`, `M_k = u + v − r − s`; at `k = m/2` only `u − r` remains.
pub fn m_k_values(m: usize, mu: &BigRational, a: &BigRational, b: &BigRational) -> Result<SignPattern> {
    if !mu.is_positive() {
        return precondition(format!("the exact path needs mu > 0 (mu = {mu})"));
    }
    if a.is_negative() || b.is_negative() {
        return precondition("a and b must be non-negative");
    }
    let (p, q) = lemma3_bases(mu, a, b);
    let pa = pochhammer_table(&p[0], m);
    let pb = pochhammer_table(&p[1], m);
    let q0 = pochhammer_table(&q[0], m);
    let qab = pochhammer_table(&q[1], m);
    let mut entries = Vec::with_capacity(m / 2 + 1);
    for k in 0..=m / 2 {
        let j = m - k;
        let u = (&pa[k] * &pb[j]).recip();
        let r = (&q0[j] * &qab[k]).recip();
        let (lead, trail) = if 2 * k == m {
            (u, r)
        } else {
            let v = (&pb[k] * &pa[j]).recip();
            let s = (&q0[k] * &qab[j]).recip();
            (u + v, r + s)
        };
        entries.push(NormalizedGammaQuotient::new(lead, p.clone(), trail, q.clone())?);
    }
    Ok(SignPattern::new(entries))
}

fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::HypothesisViolation(msg.into()))
}

/// `Σ_{k ≤ n/2} f_k f_{n−k} A_k` after validating the hypotheses on `f` and `A`.
///
/// `f` must be non-negative and log-concave without internal zeros (leading zeros
/// allowed); `A` must change sign at most once, from negative to positive, end
/// positive and have a non-negative sum.
pub fn lemma2_sum(f: &[BigRational], a: &[BigRational]) -> Result<BigRational> {
    if f.is_empty() {
        return precondition("f must have at least one term");
    }
    let n = f.len() - 1;
    if a.len() != n / 2 + 1 {
        return Err(Error::Arity(format!(
            "expected {} weights for n = {n}, got {}",
            n / 2 + 1,
            a.len()
        )));
    }
    if f.iter().any(|x| x.is_negative()) {
        return violation("f has a negative term");
    }
    if (1..n).any(|k| &f[k] * &f[k] < &f[k - 1] * &f[k + 1]) {
        return violation("f is not log-concave");
    }
    let first = f.iter().position(|x| !x.is_zero());
    if let Some(s) = first {
        let last = f.iter().rposition(|x| !x.is_zero()).unwrap_or(s);
        if f[s..=last].iter().any(|x| x.is_zero()) {
            return violation("f has an internal zero");
        }
    }
    let signs: Vec<Sign> = a.iter().map(Sign::of).collect();
    if sign_changes(&signs) > 1 || signs.last() != Some(&Sign::Positive) {
        return violation("A must change sign at most once, from negative to positive, and end positive");
    }
    let total: BigRational = a.iter().sum();
    if total.is_negative() {
        return violation("the weights A must have a non-negative sum");
    }
    Ok((0..=n / 2).map(|k| &f[k] * &f[n - k] * &a[k]).sum())
}

/// Whether `Σ f_k f_{n−k} A_k ≥ 0`; hypothesis failures are errors, not `false`.
pub fn lemma2_check(f: &[BigRational], a: &[BigRational]) -> Result<bool> {
    Ok(!lemma2_sum(f, a)?.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::identities::lemma3_sum;
    use crate::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|x| int(*x)).collect()
    }

    #[test]
    fn m_k_examples() {
        let p = m_k_values(1, &int(1), &int(1), &int(1)).unwrap();
        assert_eq!(p.values(), vec![Some(rat(1, 3))]);
        assert!(p.is_legal());
        let p2 = m_k_values(2, &int(1), &int(1), &int(1)).unwrap();
        assert_eq!(p2.entries.last().unwrap().exact_value(), Some(rat(1, 12)));
        assert!(p2.is_legal());
    }

    #[test]
    fn symmetric_in_a_and_b() {
        let x = m_k_values(7, &rat(1, 2), &rat(2, 3), &rat(5, 2)).unwrap();
        let y = m_k_values(7, &rat(1, 2), &rat(5, 2), &rat(2, 3)).unwrap();
        for (e, f) in x.entries.iter().zip(&y.entries) {
            assert_eq!((&e.lead, &e.trail), (&f.lead, &f.trail));
        }
    }

    #[test]
    fn weighted_sum_reproduces_gamma_sum() {
        for m in 0..8 {
            let p = m_k_values(m, &rat(3, 4), &rat(1, 3), &int(2)).unwrap();
            let s = lemma3_sum(m, &rat(3, 4), &rat(1, 3), &int(2)).unwrap();
            assert_eq!(p.factorial_weighted_sum(m).unwrap().exactly_equals(&s), Some(true));
        }
    }

    #[test]
    fn lemma2_examples() {
        assert!(lemma2_check(&ints(&[1, 1, 1]), &ints(&[-1, 2])).unwrap());
        assert_eq!(lemma2_sum(&ints(&[1, 2, 4]), &ints(&[-1, 1])).unwrap(), int(0));
        assert!(matches!(
            lemma2_check(&ints(&[1, 1, 1]), &ints(&[1, -1])),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            lemma2_check(&ints(&[1, 3, 1, 1]), &ints(&[-1, 2])),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            lemma2_check(&ints(&[1, 1]), &ints(&[1, 1, 1])),
            Err(Error::Arity(_))
        ));
    }

    #[test]
    fn sign_changes_ignore_zeros() {
        use Sign::*;
        assert_eq!(sign_changes(&[Negative, Zero, Zero, Positive, Positive]), 1);
        assert_eq!(sign_changes(&[Positive, Negative, Positive]), 2);
    }
}
