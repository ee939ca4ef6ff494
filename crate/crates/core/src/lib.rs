//! Exact computation of classical and degenerate special-number families
//! (Stirling numbers of both kinds, their λ-deformations, higher-order
//! Bernoulli numbers, Bernoulli numbers of the second kind, derangement
//! numbers and polynomials), exact rational moments of expressions in
//! independent uniform/gamma random variables, and a verification suite
//! that mechanically checks the identities connecting the two by exact
//! rational or polynomial equality, with a Monte Carlo cross-check.
//!
//! All identity checks are exact: every scalar is an arbitrary-precision
//! rational and every symbolic λ-value is a polynomial over the rationals.
//! Floating point appears only in the `mc` module, which exists to
//! cross-validate the exact engine statistically.

pub mod error;
pub mod exact;
pub mod identity;
pub mod mc;
pub mod moment;
pub mod special;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
