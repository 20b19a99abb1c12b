//! Special functions built on the reciprocal-gamma series, with their Turán-type bounds.

mod bessel;
mod hypergeometric;
mod param_derivative;
mod remainder;
mod symmetric;

pub use bessel::*;
pub use hypergeometric::*;
pub use param_derivative::*;
pub use remainder::*;
pub use symmetric::*;
