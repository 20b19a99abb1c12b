use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{precondition, Result};
use crate::gamma::pochhammer_rational;
use crate::rational::{of_usize, to_f64};
use crate::scalar::Real;

/// Number of leading terms inspected when deriving structural flags.
pub const FLAG_PREFIX: usize = 64;

type FloatGen<T> = Arc<dyn Fn(usize) -> T + Send + Sync>;
type ExactGen = Arc<dyn Fn(usize) -> BigRational + Send + Sync>;

#[derive(Clone)]
enum Terms<T> {
    Finite(Vec<T>),
    Generated(FloatGen<T>),
}

#[derive(Clone)]
enum ExactTerms {
    Finite(Vec<BigRational>),
    Generated(ExactGen),
}

/// Structural properties verified on the stored prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SequenceFlags {
    /// `t_k² ≥ t_{k−1} t_{k+1}` for every interior index.
    pub log_concave: bool,
    /// No zero term is followed by a positive one, apart from the leading zeros.
    pub no_internal_zeros: bool,
    /// `{t_k · k!}` is log-concave.
    pub factorial_weighted_log_concave: bool,
}

/// Named coefficient families used across the examples and test corpora.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceFamily {
    /// `t_k = 1`.
    Ones,
    /// `t_k = 1/k!`.
    ReciprocalFactorial,
    /// `t_k = r^k`.
    Geometric { ratio: BigRational },
    /// `t_k = (η)_k / k!`.
    PochhammerRatio { eta: BigRational },
    /// `t_k = Π(a_i)_k / Π(b_j)_k`.
    Hyperterm {
        upper: Vec<BigRational>,
        lower: Vec<BigRational>,
    },
    /// `t_k = (ψ(a+k) − ψ(a)) (a)_k / k!`, with the digamma difference taken as `Σ_{j<k} 1/(a+j)`.
    HarmonicWeighted { a: BigRational },
    /// `t_k = (k!)^p`, log-convex for `p ≥ 1`.
    FactorialPower { power: u32 },
}

/// A non-negative coefficient sequence `{f_k}` or `{g_k}` with an optional exact view.
///
/// Finite sequences are implicitly continued by zeros.
#[derive(Clone)]
pub struct CoefficientSequence<T> {
    terms: Terms<T>,
    exact: Option<ExactTerms>,
    leading_zero_count: usize,
    flags: SequenceFlags,
}

impl<T: Real> fmt::Debug for CoefficientSequence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix: Vec<T> = (0..8).map(|k| self.term(k)).collect();
        f.debug_struct("CoefficientSequence")
            .field("prefix", &prefix)
            .field("finite_len", &self.finite_len())
            .field("exact", &self.exact.is_some())
            .field("leading_zero_count", &self.leading_zero_count)
            .field("flags", &self.flags)
            .finish()
    }
}

impl<T: Real> CoefficientSequence<T> {
    /// Finite list of floating terms.
    pub fn from_terms(terms: Vec<T>) -> Result<Self> {
        Self::build(Terms::Finite(terms), None)
    }

    /// Finite list of exact terms; the floating view is the rounded rationals.
    pub fn from_rationals(terms: Vec<BigRational>) -> Result<Self> {
        let float = terms.iter().map(|r| T::lit(to_f64(r))).collect();
        Self::build(Terms::Finite(float), Some(ExactTerms::Finite(terms)))
    }

    /// Infinite sequence given by a generator.
    pub fn from_fn(f: impl Fn(usize) -> T + Send + Sync + 'static) -> Result<Self> {
        Self::build(Terms::Generated(Arc::new(f)), None)
    }

    /// Infinite sequence with both a floating and an exact generator.
    pub fn from_exact_fn(f: impl Fn(usize) -> BigRational + Send + Sync + 'static) -> Result<Self> {
        let exact: ExactGen = Arc::new(f);
        let g = exact.clone();
        let float: FloatGen<T> = Arc::new(move |k| T::lit(to_f64(&g(k))));
        Self::build(Terms::Generated(float), Some(ExactTerms::Generated(exact)))
    }

    pub fn family(family: SequenceFamily) -> Result<Self> {
        let exact: ExactGen = match family.clone() {
            SequenceFamily::Ones => Arc::new(|_| BigRational::one()),
            SequenceFamily::ReciprocalFactorial => Arc::new(|k| BigRational::one() / crate::rational::factorial(k)),
            SequenceFamily::Geometric { ratio } => {
                if ratio.is_negative() {
                    return precondition("geometric ratio must be non-negative");
                }
                Arc::new(move |k| num_traits::pow(ratio.clone(), k))
            }
            SequenceFamily::PochhammerRatio { eta } => {
                Arc::new(move |k| pochhammer_rational(&eta, k) / crate::rational::factorial(k))
            }
            SequenceFamily::Hyperterm { upper, lower } => {
                if lower.iter().any(crate::rational::is_nonpositive_integer) {
                    return precondition("hyperterm lower parameters must avoid 0, -1, -2, ...");
                }
                Arc::new(move |k| hyperterm_exact(&upper, &lower, k))
            }
            SequenceFamily::HarmonicWeighted { a } => {
                if !a.is_positive() {
                    return precondition("harmonic weights need a > 0");
                }
                Arc::new(move |k| harmonic_weighted_exact(&a, k))
            }
            SequenceFamily::FactorialPower { power } => {
                Arc::new(move |k| num_traits::pow(crate::rational::factorial(k), power as usize))
            }
        };
        let float: FloatGen<T> = match family {
            SequenceFamily::Ones => Arc::new(|_| T::one()),
            SequenceFamily::ReciprocalFactorial => Arc::new(|k| (1..=k).fold(T::one(), |acc, j| acc / T::of_usize(j))),
            SequenceFamily::Geometric { ratio } => {
                let r = T::lit(to_f64(&ratio));
                Arc::new(move |k| r.powi(k as i32))
            }
            SequenceFamily::PochhammerRatio { eta } => {
                let eta = T::lit(to_f64(&eta));
                Arc::new(move |k| (0..k).fold(T::one(), |acc, j| acc * (eta + T::of_usize(j)) / T::of_usize(j + 1)))
            }
            SequenceFamily::Hyperterm { upper, lower } => {
                let up: Vec<T> = upper.iter().map(|r| T::lit(to_f64(r))).collect();
                let lo: Vec<T> = lower.iter().map(|r| T::lit(to_f64(r))).collect();
                Arc::new(move |k| hyperterm_float(&up, &lo, k))
            }
            SequenceFamily::HarmonicWeighted { a } => {
                let a = T::lit(to_f64(&a));
                Arc::new(move |k| harmonic_weighted_float(a, k))
            }
            SequenceFamily::FactorialPower { power } => {
                Arc::new(move |k| (1..=k).fold(T::one(), |acc, j| acc * T::of_usize(j)).powi(power as i32))
            }
        };
        Self::build(Terms::Generated(float), Some(ExactTerms::Generated(exact)))
    }

    fn build(terms: Terms<T>, exact: Option<ExactTerms>) -> Result<Self> {
        let mut seq = Self {
            terms,
            exact,
            leading_zero_count: 0,
            flags: SequenceFlags::default(),
        };
        let n = seq.finite_len().unwrap_or(FLAG_PREFIX);
        let prefix: Vec<T> = (0..n).map(|k| seq.term(k)).collect();
        if prefix.iter().any(|t| t.is_nan() || *t < T::zero()) {
            return precondition("coefficient sequence must be non-negative");
        }
        let Some(lz) = prefix.iter().position(|t| *t > T::zero()) else {
            return precondition("coefficient sequence is trivial (all terms vanish)");
        };
        seq.leading_zero_count = lz;
        seq.flags = match seq.exact_prefix(n) {
            Some(exact) => flags_exact(&exact, lz),
            None => flags_float(&prefix, lz),
        };
        Ok(seq)
    }

    pub fn term(&self, k: usize) -> T {
        match &self.terms {
            Terms::Finite(v) => v.get(k).copied().unwrap_or_else(T::zero),
            Terms::Generated(f) => f(k),
        }
    }

    pub fn exact_term(&self, k: usize) -> Option<BigRational> {
        match self.exact.as_ref()? {
            ExactTerms::Finite(v) => Some(v.get(k).cloned().unwrap_or_else(BigRational::zero)),
            ExactTerms::Generated(f) => Some(f(k)),
        }
    }

    /// Exact terms `0..n`, when an exact view exists.
    pub fn exact_prefix(&self, n: usize) -> Option<Vec<BigRational>> {
        self.exact.as_ref()?;
        Some((0..n).map(|k| self.exact_term(k).expect("exact view")).collect())
    }

    pub fn has_exact_view(&self) -> bool {
        self.exact.is_some()
    }

    /// Length of the stored list; `None` for generated sequences.
    pub fn finite_len(&self) -> Option<usize> {
        match &self.terms {
            Terms::Finite(v) => Some(v.len()),
            Terms::Generated(_) => None,
        }
    }

    pub fn leading_zero_count(&self) -> usize {
        self.leading_zero_count
    }

    pub fn flags(&self) -> SequenceFlags {
        self.flags
    }

    /// The hypotheses shared by both main theorems: log-concave without internal zeros.
    pub fn is_doubly_positive(&self) -> bool {
        self.flags.log_concave && self.flags.no_internal_zeros
    }

    /// `{t_k / k!}`, turning an f-form sequence into the equivalent g-form one.
    pub fn divided_by_factorial(&self) -> Result<Self> {
        let terms = match &self.terms {
            Terms::Finite(v) => Terms::Finite(
                v.iter()
                    .enumerate()
                    .map(|(k, t)| (1..=k).fold(*t, |acc, j| acc / T::of_usize(j)))
                    .collect(),
            ),
            Terms::Generated(f) => {
                let f = f.clone();
                Terms::Generated(Arc::new(move |k| (1..=k).fold(f(k), |acc, j| acc / T::of_usize(j))))
            }
        };
        let exact = match &self.exact {
            None => None,
            Some(ExactTerms::Finite(v)) => Some(ExactTerms::Finite(
                v.iter()
                    .enumerate()
                    .map(|(k, t)| t / crate::rational::factorial(k))
                    .collect(),
            )),
            Some(ExactTerms::Generated(f)) => {
                let f = f.clone();
                Some(ExactTerms::Generated(Arc::new(move |k| {
                    f(k) / crate::rational::factorial(k)
                })))
            }
        };
        Self::build(terms, exact)
    }
}

fn hyperterm_exact(upper: &[BigRational], lower: &[BigRational], k: usize) -> BigRational {
    let num = upper
        .iter()
        .fold(BigRational::one(), |acc, a| acc * pochhammer_rational(a, k));
    let den = lower
        .iter()
        .fold(BigRational::one(), |acc, b| acc * pochhammer_rational(b, k));
    num / den
}

fn hyperterm_float<T: Real>(upper: &[T], lower: &[T], k: usize) -> T {
    let mut acc = T::one();
    for j in 0..k {
        let jj = T::of_usize(j);
        for a in upper {
            acc *= *a + jj;
        }
        for b in lower {
            acc /= *b + jj;
        }
    }
    acc
}

/// `H_k(a) = Σ_{j<k} 1/(a+j)` exactly; this is `ψ(a+k) − ψ(a)`.
pub fn harmonic_difference(a: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::zero(), |acc, j| acc + (a + of_usize(j)).recip())
}

pub(crate) fn harmonic_weighted_exact(a: &BigRational, k: usize) -> BigRational {
    harmonic_difference(a, k) * pochhammer_rational(a, k) / crate::rational::factorial(k)
}

pub(crate) fn harmonic_weighted_float<T: Real>(a: T, k: usize) -> T {
    let mut h = T::zero();
    let mut w = T::one();
    for j in 0..k {
        let aj = a + T::of_usize(j);
        h += aj.recip();
        w = w * aj / T::of_usize(j + 1);
    }
    h * w
}

fn flags_exact(t: &[BigRational], lz: usize) -> SequenceFlags {
    let log_concave = (1..t.len().saturating_sub(1)).all(|k| &t[k] * &t[k] >= &t[k - 1] * &t[k + 1]);
    let no_internal_zeros = no_internal_zeros(t.iter().map(|x| x.is_zero()), lz);
    let weighted: Vec<BigRational> = t
        .iter()
        .enumerate()
        .map(|(k, x)| x * crate::rational::factorial(k))
        .collect();
    let factorial_weighted_log_concave = (1..weighted.len().saturating_sub(1))
        .all(|k| &weighted[k] * &weighted[k] >= &weighted[k - 1] * &weighted[k + 1]);
    SequenceFlags {
        log_concave,
        no_internal_zeros,
        factorial_weighted_log_concave,
    }
}

fn flags_float<T: Real>(t: &[T], lz: usize) -> SequenceFlags {
    let slack = T::one() - T::lit(8.0) * T::epsilon();
    let lc = |v: &[T]| (1..v.len().saturating_sub(1)).all(|k| v[k] * v[k] >= v[k - 1] * v[k + 1] * slack);
    let weighted: Vec<T> = t
        .iter()
        .enumerate()
        .map(|(k, x)| (1..=k).fold(*x, |acc, j| acc * T::of_usize(j)))
        .collect();
    SequenceFlags {
        log_concave: lc(t),
        no_internal_zeros: no_internal_zeros(t.iter().map(|x| *x == T::zero()), lz),
        factorial_weighted_log_concave: lc(&weighted),
    }
}

fn no_internal_zeros(zero: impl Iterator<Item = bool>, lz: usize) -> bool {
    let mut seen_gap = false;
    for (k, z) in zero.enumerate() {
        if k < lz {
            continue;
        }
        if z {
            seen_gap = true;
        } else if seen_gap {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn ones_is_doubly_positive() {
        let s = CoefficientSequence::<f64>::family(SequenceFamily::Ones).unwrap();
        assert!(s.is_doubly_positive());
        // k! is log-convex
        assert!(!s.flags().factorial_weighted_log_concave);
        let r = CoefficientSequence::<f64>::family(SequenceFamily::ReciprocalFactorial).unwrap();
        assert!(r.flags().factorial_weighted_log_concave);
        assert_eq!(s.leading_zero_count(), 0);
        assert_eq!(s.exact_term(5), Some(int(1)));
    }

    #[test]
    fn factorial_square_is_log_convex() {
        let s = CoefficientSequence::<f64>::family(SequenceFamily::FactorialPower { power: 2 }).unwrap();
        assert!(!s.flags().log_concave);
    }

    #[test]
    fn harmonic_weights_have_one_leading_zero() {
        let s = CoefficientSequence::<f64>::family(SequenceFamily::HarmonicWeighted { a: rat(3, 2) }).unwrap();
        assert_eq!(s.leading_zero_count(), 1);
        assert!(s.is_doubly_positive());
        assert_eq!(s.exact_term(1), Some(rat(1, 1)));
        assert!((s.term(2) - harmonic_weighted_float(1.5, 2)).abs() < 1e-15);
    }

    #[test]
    fn internal_zero_detected() {
        let s = CoefficientSequence::from_terms(vec![1.0_f64, 0.0, 1.0]).unwrap();
        assert!(!s.flags().no_internal_zeros);
        let t = CoefficientSequence::from_terms(vec![0.0_f64, 1.0, 1.0, 0.0]).unwrap();
        assert!(t.flags().no_internal_zeros);
        assert_eq!(t.leading_zero_count(), 1);
    }

    #[test]
    fn rejects_negative_and_trivial() {
        assert!(CoefficientSequence::from_terms(vec![1.0_f64, -1.0]).is_err());
        assert!(CoefficientSequence::from_terms(vec![0.0_f64, 0.0]).is_err());
    }

    #[test]
    fn factorial_division_round_trips_families() {
        let f = CoefficientSequence::<f64>::family(SequenceFamily::Ones).unwrap();
        let g = f.divided_by_factorial().unwrap();
        let h = CoefficientSequence::<f64>::family(SequenceFamily::ReciprocalFactorial).unwrap();
        for k in 0..20 {
            assert_eq!(g.exact_term(k), h.exact_term(k));
            assert!((g.term(k) - h.term(k)).abs() <= 1e-15 * h.term(k));
        }
    }
}
