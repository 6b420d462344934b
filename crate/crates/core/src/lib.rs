//! Exact arithmetic on a decidable fragment of the hyperreal line.
//!
//! Numbers are germs at infinity of quotients of exponential-polynomials in
//! one formal infinite hypernatural `H`, e.g. `1 - pow(1/10,H)`, the
//! hyperfinite sum of `9/10ⁿ` for `n = 1..H`. Comparisons are decided by
//! eventual dominance, so no ultrafilter has to be chosen.
//!
//! - [`germ`]: [`Hyperreal`], [`Hypernat`], field operations, order,
//!   classification, standard part.
//! - [`decimal`]: repeating decimals and extended decimals with digits at
//!   hyper ranks.
//! - [`sequences`]: closed-form sequences, ultralimits, ε–N limits and
//!   hyperfinite sums.
//! - [`microscope`]: coordinates and renderings of a halo at infinite
//!   magnification.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod decimal;
pub mod error;
pub mod exppoly;
pub mod expr;
pub mod germ;
pub mod microscope;
pub mod poly;
pub mod rational;
pub mod sequences;

pub use error::{Error, Result};
pub use exppoly::ExpPoly;
pub use germ::{Affine, Classification, Hypernat, Hyperreal};
pub use rational::Rational;
pub use sequences::{hyperfinite_sum, Limit, SeqExpr};
