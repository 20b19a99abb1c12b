use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::gamma::{ln_gamma, pochhammer_rational};
use crate::rational::{as_usize, factorial, from_f64_exact, to_f64};

/// Sign of an exact or enclosed quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
    /// The enclosure straddles zero.
    Undecided,
}

impl Sign {
    pub fn of(r: &BigRational) -> Self {
        if r.is_positive() {
            Sign::Positive
        } else if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// How a sign was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    /// Pure rational arithmetic.
    Exact,
    /// Rational arithmetic plus a rigorous enclosure of one gamma quotient.
    Certified,
    /// Floating point with a noise guard.
    Float,
}

impl Certainty {
    /// Suffix appended to check identifiers.
    pub fn suffix(self) -> &'static str {
        match self {
            Certainty::Exact => "exact",
            Certainty::Certified => "certified",
            Certainty::Float => "float",
        }
    }
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suffix())
    }
}

/// `ρ = Γ(p1)Γ(p2)/(Γ(q1)Γ(q2))`, exact when the arguments pair up by integer shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaRatio {
    Exact(BigRational),
    Enclosed { lower: BigRational, upper: BigRational },
}

fn integer_shift(p: &BigRational, q: &BigRational) -> Option<BigInt> {
    let d = p - q;
    d.is_integer().then(|| d.to_integer())
}

/// `Γ(p)/Γ(q)` for `p − q = d ∈ ℤ` and positive arguments.
fn shifted_ratio(p: &BigRational, q: &BigRational, d: &BigInt) -> BigRational {
    let n = d.abs().to_usize().expect("gamma shift fits in usize");
    if d.is_negative() {
        pochhammer_rational(p, n).recip()
    } else {
        pochhammer_rational(q, n)
    }
}

/// Relative half-width of the floating enclosure of `ln ρ`.
const ENCLOSURE_SLACK: f64 = 1e-11;

impl GammaRatio {
    pub fn new(p: &[BigRational; 2], q: &[BigRational; 2]) -> Self {
        for (i, j) in [(0, 1), (1, 0)] {
            if let (Some(d1), Some(d2)) = (integer_shift(&p[0], &q[i]), integer_shift(&p[1], &q[j])) {
                return GammaRatio::Exact(shifted_ratio(&p[0], &q[i], &d1) * shifted_ratio(&p[1], &q[j], &d2));
            }
        }
        // Peel off one exact pair if there is one; only the rest is enclosed.
        let mut exact = BigRational::one();
        let (mut pf, mut qf) = (vec![&p[0], &p[1]], vec![&q[0], &q[1]]);
        'outer: for (i, pi) in p.iter().enumerate() {
            for (j, qj) in q.iter().enumerate() {
                if let Some(d) = integer_shift(pi, qj) {
                    exact = shifted_ratio(pi, qj, &d);
                    pf.remove(i);
                    qf.remove(j);
                    break 'outer;
                }
            }
        }
        let (lower, upper) = enclose_log_gamma_ratio(&pf, &qf);
        GammaRatio::Enclosed {
            lower: &exact * lower,
            upper: &exact * upper,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            GammaRatio::Exact(r) => Some(r),
            GammaRatio::Enclosed { .. } => None,
        }
    }

    pub fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            GammaRatio::Exact(r) => (r.clone(), r.clone()),
            GammaRatio::Enclosed { lower, upper } => (lower.clone(), upper.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            GammaRatio::Exact(r) => to_f64(r),
            GammaRatio::Enclosed { lower, upper } => 0.5 * (to_f64(lower) + to_f64(upper)),
        }
    }
}

/// Encloses `ΠΓ(p)/ΠΓ(q)` from `f64` log-gammas with a generous slack.
fn enclose_log_gamma_ratio(p: &[&BigRational], q: &[&BigRational]) -> (BigRational, BigRational) {
    let mut log = 0.0_f64;
    let mut size = 1.0_f64;
    for (args, sign) in [(p, 1.0), (q, -1.0)] {
        for x in args {
            let xf = to_f64(x);
            let lg = ln_gamma(xf).expect("enclosed gamma arguments are positive");
            log += sign * lg;
            size += lg.abs() + xf.abs();
        }
    }
    let delta = ENCLOSURE_SLACK * size;
    let lo = from_f64_exact((log - delta).exp()).expect("finite enclosure");
    let hi = from_f64_exact((log + delta).exp()).expect("finite enclosure");
    (lo, hi)
}

/// `lead/(Γ(p1)Γ(p2)) − trail/(Γ(q1)Γ(q2))` with rational `lead`, `trail`.
///
/// Multiplying through by the positive `Γ(p1)Γ(p2)` leaves `lead − trail·ρ`, whose
/// sign is the sign of the original quantity. All four gamma arguments must be
/// positive, which is what makes the normalizer positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedGammaQuotient {
    pub lead: BigRational,
    pub lead_args: [BigRational; 2],
    pub trail: BigRational,
    pub trail_args: [BigRational; 2],
    pub ratio: GammaRatio,
}

impl NormalizedGammaQuotient {
    pub fn new(
        lead: BigRational,
        lead_args: [BigRational; 2],
        trail: BigRational,
        trail_args: [BigRational; 2],
    ) -> Result<Self> {
        if lead_args.iter().chain(trail_args.iter()).any(|x| !x.is_positive()) {
            return precondition("gamma arguments of a normalized quotient must be positive");
        }
        let ratio = GammaRatio::new(&lead_args, &trail_args);
        Ok(Self {
            lead,
            lead_args,
            trail,
            trail_args,
            ratio,
        })
    }

    /// Always true: construction rejects non-positive gamma arguments.
    pub fn normalizer_positive(&self) -> bool {
        true
    }

    pub fn certainty(&self) -> Certainty {
        match self.ratio {
            GammaRatio::Exact(_) => Certainty::Exact,
            GammaRatio::Enclosed { .. } => Certainty::Certified,
        }
    }

    /// `lead − trail·ρ` when `ρ` is rational.
    pub fn normalized_value(&self) -> Option<BigRational> {
        self.ratio.exact().map(|r| &self.lead - &self.trail * r)
    }

    /// Interval containing `lead − trail·ρ`.
    pub fn normalized_bounds(&self) -> (BigRational, BigRational) {
        let (lo, hi) = self.ratio.bounds();
        let a = &self.lead - &self.trail * &lo;
        let b = &self.lead - &self.trail * &hi;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn sign(&self) -> Sign {
        if let Some(v) = self.normalized_value() {
            return Sign::of(&v);
        }
        if self.trail.is_zero() {
            return Sign::of(&self.lead);
        }
        let (lo, hi) = self.normalized_bounds();
        if lo.is_positive() {
            Sign::Positive
        } else if hi.is_negative() {
            Sign::Negative
        } else {
            Sign::Undecided
        }
    }

    /// The un-normalized value when every gamma argument is a positive integer.
    pub fn exact_value(&self) -> Option<BigRational> {
        let fact = |x: &BigRational| as_usize(x).map(|n| factorial(n - 1));
        let [p1, p2] = &self.lead_args;
        let [q1, q2] = &self.trail_args;
        Some(&self.lead / (fact(p1)? * fact(p2)?) - &self.trail / (fact(q1)? * fact(q2)?))
    }

    /// Floating approximation of the normalized value.
    pub fn normalized_f64(&self) -> f64 {
        match self.normalized_value() {
            Some(v) => to_f64(&v),
            None => to_f64(&self.lead) - to_f64(&self.trail) * self.ratio.to_f64(),
        }
    }

    /// Lower end of the normalized enclosure as `f64`, useful as a reported margin.
    pub fn normalized_lower_f64(&self) -> f64 {
        to_f64(&self.normalized_bounds().0)
    }

    fn same_bases(&self, other: &Self) -> bool {
        self.lead_args == other.lead_args && self.trail_args == other.trail_args
    }

    /// Exact equality of the represented values, decided without `ρ` whenever possible.
    ///
    /// `None` means the lead and trail differences are nonzero and `ρ` is irrational-looking,
    /// so equality cannot be settled in rational arithmetic.
    pub fn exactly_equals(&self, other: &Self) -> Option<bool> {
        if !self.same_bases(other) {
            return None;
        }
        if self.lead == other.lead && self.trail == other.trail {
            return Some(true);
        }
        let dl = &self.lead - &other.lead;
        let dt = &self.trail - &other.trail;
        match self.ratio.exact() {
            Some(r) => Some(dl == dt * r),
            None if dt.is_zero() => Some(false),
            None => None,
        }
    }

    /// `(lead − lead', trail − trail')`, the coefficient-wise difference over shared bases.
    pub fn coefficient_difference(&self, other: &Self) -> Option<(BigRational, BigRational)> {
        self.same_bases(other)
            .then(|| (&self.lead - &other.lead, &self.trail - &other.trail))
    }

    /// `Σ w_i · q_i` over quotients with shared bases.
    pub fn weighted_sum<'a>(
        items: impl IntoIterator<Item = (BigRational, &'a NormalizedGammaQuotient)>,
    ) -> Option<Self> {
        let mut out: Option<Self> = None;
        for (w, q) in items {
            match &mut out {
                None => {
                    let mut first = q.clone();
                    first.lead = &first.lead * &w;
                    first.trail = &first.trail * &w;
                    out = Some(first);
                }
                Some(acc) => {
                    if !acc.same_bases(q) {
                        return None;
                    }
                    acc.lead += &q.lead * &w;
                    acc.trail += &q.trail * &w;
                }
            }
        }
        out
    }
}
