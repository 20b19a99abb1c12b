//! Turán-type inequalities for series in reciprocal gamma functions.
//!
//! The numerical kernels are generic over [`scalar::Real`] (`f32`, `f64`); the
//! exact checks run on [`Rational`]. Aliases for the common `f64` instantiations
//! live at the crate root.

// `!(x > 0)` is how domain checks reject NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod compensated;
pub mod error;
pub mod exact;
pub mod gamma;
pub mod rational;
pub mod report;
pub mod scalar;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use report::{CheckResult, Quantity, Status, SuiteReport};

/// Exact rational used by the identity and positivity checks.
pub type Rational = num_rational::BigRational;

pub type SeriesValueF64 = series::SeriesValue<f64>;
pub type CoefficientSequenceF64 = series::CoefficientSequence<f64>;
pub type TuranianSpecF64 = series::TuranianSpec<f64>;
pub type TuranianValueF64 = series::TuranianValue<f64>;
pub type HypergeometricParamsF64 = special::HypergeometricParams<f64>;
pub type KummerBoundsF64 = special::KummerBounds<f64>;
pub type SymmetricChainReportExact = special::SymmetricChainReport<Rational>;
