use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::gamma::{pochhammer, recip_gamma};
use crate::report::{CheckResult, Params, Quantity};
use crate::scalar::{is_nonpositive_integer, Real};
use crate::series::{SeriesConfig, SeriesValue};

/// Parameters `a_1..a_p; b_1..b_q` of a generalized hypergeometric series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricParams<T> {
    pub upper: Vec<T>,
    pub lower: Vec<T>,
}

impl<T: Real> HypergeometricParams<T> {
    pub fn new(upper: Vec<T>, lower: Vec<T>) -> Result<Self> {
        if let Some(b) = lower.iter().find(|b| is_nonpositive_integer(**b)) {
            return Err(Error::Pole(format!("lower parameter {b} is a non-positive integer")));
        }
        Ok(Self { upper, lower })
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// `Σ (a)_n/(b)_n xⁿ/n!` with a truncation bound.
    pub fn sum(&self, x: T) -> Result<SeriesValue<T>> {
        pfq_series(&self.upper, &self.lower, x)
    }
}

/// `ₚF_q(a; b; x)`.
pub fn pfq<T: Real>(params: &HypergeometricParams<T>, x: T) -> Result<T> {
    params.sum(x).map(|s| s.value)
}

fn term_ratio<T: Real>(upper: &[T], lower: &[T], x: T, n: usize) -> T {
    let nn = T::of_usize(n);
    let mut r = x / (nn + T::one());
    for a in upper {
        r *= *a + nn;
    }
    for b in lower {
        r /= *b + nn;
    }
    r
}

pub(crate) fn pfq_series<T: Real>(upper: &[T], lower: &[T], x: T) -> Result<SeriesValue<T>> {
    let (p, q) = (upper.len(), lower.len());
    if p > q + 1 {
        return Err(Error::Divergence(format!("{p}F{q} has zero radius of convergence")));
    }
    if p == q + 1 && !(x.abs() < T::one()) {
        return Err(Error::Divergence(format!("{p}F{q} needs |x| < 1 (x = {x})")));
    }
    let cfg = SeriesConfig::<T>::default();
    let disk = p == q + 1;
    let cap = if disk {
        T::lit(0.5).max((T::one() + x.abs()) / T::lit(2.0))
    } else {
        cfg.ratio_cap
    };
    let mut acc = crate::compensated::CompensatedSum::new();
    let mut term = T::one();
    acc.add(term);
    for n in 0..cfg.max_terms {
        let nn = T::of_usize(n);
        if lower.iter().any(|b| *b + nn == T::zero()) {
            return Err(Error::Pole(format!("lower parameter hits zero at n = {n}")));
        }
        let r = term_ratio(upper, lower, x, n);
        term *= r;
        if term == T::zero() {
            return Ok(SeriesValue {
                value: acc.value(),
                residual: acc.double_word().lo,
                truncation_order: n,
                tail_bound: T::zero(),
            });
        }
        acc.add(term);
        let sum = acc.value();
        let next = term_ratio(upper, lower, x, n + 1).abs();
        // The ratio of the following terms only decreases from here on once it
        // is below the cap, up to the limit |x| on the disk.
        let tail_ratio = if disk { next.max(x.abs()) } else { next };
        if tail_ratio < cap && term.abs() <= cfg.rel_stop * sum.abs() {
            return Ok(SeriesValue {
                value: sum,
                residual: acc.double_word().lo,
                truncation_order: n + 1,
                tail_bound: term.abs() * tail_ratio / (T::one() - tail_ratio),
            });
        }
        if !term.is_finite() {
            return Err(Error::Overflow(format!("hypergeometric term overflowed at n = {n}")));
        }
    }
    Err(Error::NonConvergence { terms: cfg.max_terms })
}

/// Confluent hypergeometric `F(a;b;x) = ₁F₁(a;b;x)`.
///
/// Negative arguments go through `F(a;b;x) = eˣ F(b−a;b;−x)` to avoid the
/// alternating-sign cancellation.
pub fn kummer<T: Real>(a: T, b: T, x: T) -> Result<T> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(format!("F(a;b;x) has a pole at b = {b}")));
    }
    if x < T::zero() && !is_nonpositive_integer(a) {
        return Ok(x.exp() * pfq_series(&[b - a], &[b], -x)?.value);
    }
    Ok(pfq_series(&[a], &[b], x)?.value)
}

/// `F(a;b;x)/Γ(b)`, entire in `b`.
///
/// At `b = −k` the first `k+1` terms vanish and
/// `F̃(a;−k;x) = (a)_{k+1} x^{k+1}/(k+1)! · F(a+k+1; k+2; x)`.
pub fn kummer_regularized<T: Real>(a: T, b: T, x: T) -> Result<T> {
    if is_nonpositive_integer(b) {
        let k = (-b).round().to_usize().expect("small non-negative integer");
        let mut lead = pochhammer(a, k + 1);
        for j in 1..=k + 1 {
            lead = lead * x / T::of_usize(j);
        }
        if lead == T::zero() {
            return Ok(T::zero());
        }
        return Ok(lead * kummer(a + T::of_usize(k + 1), T::of_usize(k + 2), x)?);
    }
    Ok(recip_gamma(b) * kummer(a, b, x)?)
}

/// `F′(a;b;x)/F(a;b;x) = (a/b) F(a+1;b+1;x)/F(a;b;x)`.
pub fn kummer_logderiv<T: Real>(a: T, b: T, x: T) -> Result<T> {
    Ok(a / b * kummer(a + T::one(), b + T::one(), x)? / kummer(a, b, x)?)
}

/// Bounds on `r = F′/F` read off the quadratic inequalities from the contiguous relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KummerBounds<T> {
    pub lower: T,
    pub upper: T,
    /// `b = a`: both bounds collapse onto `r ≡ 1`.
    pub degenerate: bool,
    /// `b < a` with `b < 1`: the quadratic with constant `a(b−1)/b` gives no valid
    /// lower bound, so `lower` falls back to 0.
    pub lower_trivial: bool,
    /// The larger root of the `a(b−1)/b` quadratic when `lower_trivial`; NaN when
    /// the roots are complex. Kept for reference only: it is not a bound.
    pub paper_lower: T,
}

/// Larger root of `x r² + (b−x−1) r − c`, NaN when the roots are complex.
pub fn contiguous_quadratic_root<T: Real>(b: T, x: T, c: T) -> T {
    let s = x + T::one() - b;
    let disc = s * s + T::lit(4.0) * x * c;
    if disc < T::zero() {
        return T::nan();
    }
    // Rationalized form when s < 0 keeps the small root accurate.
    if s >= T::zero() {
        (s + disc.sqrt()) / (T::lit(2.0) * x)
    } else {
        T::lit(2.0) * c / (disc.sqrt() - s)
    }
}

/// Bounds with `lower < F′(a;b;x)/F(a;b;x) < upper` for `a ≥ 1`, `b > 0`, `x > 0`.
///
/// For `b > a` the lower bound comes from the constant `a−1` and the upper from
/// `a(b−1)/b`; for `b < a` the roles swap.
pub fn kummer_logderiv_bounds<T: Real>(a: T, b: T, x: T) -> Result<KummerBounds<T>> {
    if !(a >= T::one() && b > T::zero() && x > T::zero()) {
        return precondition(format!(
            "Kummer bounds need a >= 1, b > 0, x > 0 (a = {a}, b = {b}, x = {x})"
        ));
    }
    if a == b {
        return Ok(KummerBounds {
            lower: T::one(),
            upper: T::one(),
            degenerate: true,
            lower_trivial: false,
            paper_lower: T::nan(),
        });
    }
    let r_q = contiguous_quadratic_root(b, x, a - T::one());
    let r_q2 = contiguous_quadratic_root(b, x, a * (b - T::one()) / b);
    Ok(if b > a {
        KummerBounds {
            lower: r_q,
            upper: r_q2,
            degenerate: false,
            lower_trivial: false,
            paper_lower: T::nan(),
        }
    } else if b >= T::one() {
        KummerBounds {
            lower: r_q2,
            upper: r_q,
            degenerate: false,
            lower_trivial: false,
            paper_lower: T::nan(),
        }
    } else {
        KummerBounds {
            lower: T::zero(),
            upper: r_q,
            degenerate: false,
            lower_trivial: true,
            paper_lower: r_q2,
        }
    })
}

/// Compares the direct ratio `F′/F` against [`kummer_logderiv_bounds`].
pub fn kummer_bounds_check<T: Real>(a: T, b: T, x: T) -> Result<[CheckResult; 2]> {
    let p: Params = [("a", a), ("b", b), ("x", x)]
        .iter()
        .map(|(k, v)| (k.to_string(), Quantity::Real(v.as_f64())))
        .collect();
    let bounds = kummer_logderiv_bounds(a, b, x)?;
    let r = kummer_logderiv(a, b, x)?;
    let noise = T::lit(64.0) * T::epsilon() * r.abs();
    let side = |id: &str, lo: T, hi: T| {
        let gap = hi - lo;
        let margin = crate::report::relative_gap(lo.as_f64(), hi.as_f64());
        if bounds.degenerate {
            let ok = gap.abs() <= noise;
            return if ok {
                CheckResult::pass(id, p.clone(), margin)
            } else {
                CheckResult::fail(id, p.clone(), margin, format!("degenerate case expects {lo} = {hi}"))
            };
        }
        if gap.abs() <= noise {
            return CheckResult::skipped(id, p.clone());
        }
        CheckResult::from_margin(id, p.clone(), margin, true, 0.0, || format!("expected {lo} < {hi}"))
    };
    let mut lower = side("kummer.lower", bounds.lower, r);
    if bounds.lower_trivial {
        lower = lower.with_param("lower_trivial", 1_i64);
    }
    Ok([lower, side("kummer.upper", r, bounds.upper)])
}

/// Residuals of the three contiguous relations, each scaled by its largest term.
///
/// * `aF(a;b) − aF(a+1;b) + x F′(a;b)`
/// * `ab F(a+1;b) − b(a+x) F(a;b) + (b−a) x F(a;b+1)`
/// * `b F(a;b−1) − b(b−1) F(a;b) − a x F(a+1;b+1)`, with `F(a;b−1)` regularized
///   and rescaled so `b = 1` stays finite.
pub fn contiguous_residuals<T: Real>(a: T, b: T, x: T) -> Result<[T; 3]> {
    if !(b > T::zero()) {
        return precondition(format!("contiguous residuals need b > 0 (b = {b})"));
    }
    let one = T::one();
    let f = |a: T, b: T| kummer(a, b, x);
    let f00 = f(a, b)?;
    let f10 = f(a + one, b)?;
    let f11 = f(a + one, b + one)?;
    let f01 = f(a, b + one)?;
    let scaled = |terms: &[T]| {
        let big = terms.iter().fold(T::zero(), |m, t| m.max(t.abs()));
        let s: T = terms.iter().copied().sum();
        if big == T::zero() {
            T::zero()
        } else {
            s / big
        }
    };
    let r1 = scaled(&[a * f00, -a * f10, x * a / b * f11]);
    let r2 = scaled(&[a * b * f10, -b * (a + x) * f00, (b - a) * x * f01]);
    // F(a;b−1) = Γ(b−1)F̃(a;b−1), and b·F(a;b−1) = b(b−1)Γ(b−1)F̃ = bΓ(b)F̃ covers b = 1.
    let shifted = b * kummer_regularized(a, b - one, x)? / recip_gamma(b);
    let r3 = scaled(&[shifted, -b * (b - one) * f00, -a * x * f11]);
    Ok([r1, r2, r3])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn pfq_examples() {
        let e = pfq(&HypergeometricParams::new(vec![], vec![]).unwrap(), 1.0_f64).unwrap();
        assert!(close(e, std::f64::consts::E, 1e-15));
        let v = pfq(&HypergeometricParams::new(vec![2.0], vec![]).unwrap(), 0.5_f64).unwrap();
        assert!(close(v, 4.0, 1e-13));
        let l = pfq(&HypergeometricParams::new(vec![1.0, 1.0], vec![2.0]).unwrap(), 0.5_f64).unwrap();
        assert!(close(l, 1.386_294_361_119_890_6, 1e-14));
        let bad = HypergeometricParams::new(vec![1.0, 1.0], vec![2.0]).unwrap();
        assert!(matches!(pfq(&bad, 1.0_f64), Err(Error::Divergence(_))));
        let three = HypergeometricParams::new(vec![1.0, 1.0, 1.0], vec![2.0]).unwrap();
        assert!(matches!(pfq(&three, 0.1_f64), Err(Error::Divergence(_))));
        let terminating = HypergeometricParams::new(vec![-2.0], vec![1.0]).unwrap();
        assert!(close(pfq(&terminating, 3.0_f64).unwrap(), 1.0 - 6.0 + 4.5, 1e-15));
    }

    #[test]
    fn kummer_examples() {
        assert!(close(kummer(1.3_f64, 1.3, 2.0).unwrap(), 2.0_f64.exp(), 1e-14));
        assert!(close(
            kummer(1.0_f64, 2.0, 1.0).unwrap(),
            std::f64::consts::E - 1.0,
            1e-15
        ));
        assert!(close(
            kummer(1.0_f64, 2.0, -3.0).unwrap(),
            (1.0 - (-3.0_f64).exp()) / 3.0,
            1e-14
        ));
        assert!(matches!(kummer(1.0_f64, 0.0, 1.0), Err(Error::Pole(_))));
        // F̃(1;0;x) = x eˣ
        assert!(close(
            kummer_regularized(1.0_f64, 0.0, 1.0).unwrap(),
            std::f64::consts::E,
            1e-14
        ));
        let near = kummer_regularized(1.0_f64, 1e-9, 1.0).unwrap();
        assert!(close(near, std::f64::consts::E, 1e-8));
    }

    #[test]
    fn logderiv_bounds_example() {
        let b = kummer_logderiv_bounds(2.0_f64, 3.0, 1.0).unwrap();
        assert!(close(b.lower, (5.0_f64.sqrt() - 1.0) / 2.0, 1e-15));
        assert!(close(b.upper, ((19.0_f64 / 3.0).sqrt() - 1.0) / 2.0, 1e-15));
        let r = kummer_logderiv(2.0_f64, 3.0, 1.0).unwrap();
        assert!(close(r, 0.718_281_828_459_045_2, 1e-14));
        let [lo, hi] = kummer_bounds_check(2.0_f64, 3.0, 1.0).unwrap();
        assert!(lo.is_pass() && hi.is_pass());
        let flipped = kummer_logderiv_bounds(2.0_f64, 1.0, 1.0).unwrap();
        assert!(flipped.lower < flipped.upper);
        let [lo, hi] = kummer_bounds_check(2.0_f64, 1.0, 1.0).unwrap();
        assert!(lo.is_pass() && hi.is_pass());
        assert!(kummer_logderiv_bounds(2.0_f64, 2.0, 1.0).unwrap().degenerate);
        assert!(kummer_logderiv_bounds(0.5_f64, 2.0, 1.0).is_err());
    }

    #[test]
    fn small_b_uses_trivial_lower() {
        let b = kummer_logderiv_bounds(4.116_f64, 0.1673, 0.00202).unwrap();
        assert!(b.lower_trivial && b.lower == 0.0);
        let r = kummer_logderiv(4.116_f64, 0.1673, 0.00202).unwrap();
        assert!(b.paper_lower.is_nan() || b.paper_lower > r);
        let [lo, hi] = kummer_bounds_check(4.116_f64, 0.1673, 0.00202).unwrap();
        assert!(lo.is_pass() && hi.is_pass());
    }

    #[test]
    fn residuals_vanish() {
        for (a, b, x) in [
            (1.0_f64, 2.0, 1.0),
            (1.7, 1.7, 0.8),
            (2.0, 5.0, 3.0),
            (1.5, 1.0, 2.0),
            (3.0, 0.4, 6.0),
        ] {
            for r in contiguous_residuals(a, b, x).unwrap() {
                assert!(r.abs() < 1e-12, "{a} {b} {x}: {r}");
            }
        }
    }
}
