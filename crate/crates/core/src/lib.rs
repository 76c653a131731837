//! Sieve toolkit: Selberg Λ² upper bounds with exact weights, congruence
//! instances built from monic quintics, exponent balancing for
//! power-saving error terms, and truncated inclusion–exclusion with
//! rigorous tail and Euler-product enclosures.

pub mod arith;
pub mod exponent;
pub mod instances;
pub mod maximal;
pub mod sieve;

pub use arith::Rational;
