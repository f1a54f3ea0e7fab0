//! Exact oscillator (Weil) representations of `Sp(V)` over odd finite fields.
//!
//! Everything is exact: field elements of `F_q` and elements of `Q(ζ_p)`.
//! The entry point for most uses is [`oscillator::Context`] (an orthogonal
//! space `U`, the rank `n` of `V = F_q^{2n}` and a mass), on which generator
//! words act through [`oscillator::RepOperator`]. The [`certify`] module
//! wraps the checks as named claims with JSON certificates.
//!
//! Module order follows the dependency chain: `field` → `cyclo` → `linalg`
//! → `quadratic` → `oscillator` → `weight`, `css`, `invariant`, `clifford`.

pub mod certify;
pub mod clifford;
pub mod css;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod invariant;
pub mod linalg;
pub mod oscillator;
pub mod quadratic;
pub mod weight;
