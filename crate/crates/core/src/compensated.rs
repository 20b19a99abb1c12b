//! Error-free transformations and double-word arithmetic.
//!
//! Used to accumulate series without losing the low-order bits and to decide the
//! sign of product differences `a·b − c·d` that nearly cancel.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

/// `a + b = s + e` exactly.
#[inline]
pub fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `a · b = p + e` exactly (needs a correctly rounded fused multiply-add).
#[inline]
pub fn two_prod<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleWord<T> {
    pub hi: T,
    pub lo: T,
}

impl<T: Real> DoubleWord<T> {
    pub fn new(hi: T, lo: T) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn from_single(x: T) -> Self {
        Self { hi: x, lo: T::zero() }
    }

    pub fn value(self) -> T {
        self.hi + self.lo
    }
}

impl<T: Real> Add for DoubleWord<T> {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = fast_two_sum(s, e + t);
        let (hi, lo) = fast_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl<T: Real> Neg for DoubleWord<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl<T: Real> Sub for DoubleWord<T> {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        self + -other
    }
}

impl<T: Real> Mul for DoubleWord<T> {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = fast_two_sum(p, e);
        Self { hi, lo }
    }
}

#[inline]
fn fast_two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: T) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.compensation += e;
    }

    /// Rounded running total.
    pub fn value(&self) -> T {
        self.sum + self.compensation
    }

    pub fn double_word(&self) -> DoubleWord<T> {
        DoubleWord::new(self.sum, self.compensation)
    }
}

/// Outcome of a product difference with a cancellation verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuardedDifference<T> {
    pub value: T,
    /// `max(|a·b|, |c·d|)`, the magnitude the difference is measured against.
    pub scale: T,
    /// False when the difference is too small relative to `scale` for its sign to be trusted.
    pub resolved: bool,
}

impl<T: Real> GuardedDifference<T> {
    /// `value / scale`, zero when both products vanish.
    pub fn relative(&self) -> T {
        if self.scale == T::zero() {
            T::zero()
        } else {
            self.value / self.scale
        }
    }
}

/// `a·b − c·d` evaluated on double-word inputs.
///
/// A plain evaluation is tried first; when it falls below `1e3·ε·scale` the
/// difference is recomputed in double-word arithmetic. Even then the inputs only
/// carry working precision, so a result below `8·ε·scale` is reported unresolved.
pub fn product_difference<T: Real>(
    a: DoubleWord<T>,
    b: DoubleWord<T>,
    c: DoubleWord<T>,
    d: DoubleWord<T>,
) -> GuardedDifference<T> {
    let ab = a.value() * b.value();
    let cd = c.value() * d.value();
    let scale = ab.abs().max(cd.abs());
    let plain = ab - cd;
    let eps = T::epsilon();
    if plain.abs() >= T::lit(1e3) * eps * scale {
        return GuardedDifference {
            value: plain,
            scale,
            resolved: true,
        };
    }
    let refined = (a * b - c * d).value();
    GuardedDifference {
        value: refined,
        scale,
        resolved: refined.abs() > T::lit(8.0) * eps * scale || scale == T::zero(),
    }
}
