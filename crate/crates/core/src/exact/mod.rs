//! Exact rational verification of the finite gamma-sum identities, the sign
//! structure of the `M_k` numbers and coefficient positivity.
//!
//! Values of the form `Σ 1/(Γ(·)Γ(·))` are carried as a [`NormalizedGammaQuotient`]:
//! two rational coefficients over two positive gamma products.

mod checks;
mod identities;
mod pattern;
mod positivity;
mod quotient;

pub use checks::*;
pub use identities::*;
pub use pattern::*;
pub use positivity::*;
pub use quotient::*;
