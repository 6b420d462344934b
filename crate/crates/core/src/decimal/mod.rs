//! Repeating decimals, Lightstone extended decimals and digit queries.
//!
//! Extended decimal text lays digit groups over rank ranges:
//!
//! ```text
//! extdec  := '-'? int (('.'|',') segment+)?
//! segment := group '{' range '}'
//! group   := digit+ | '(' digit+ ')'
//! range   := bound '..' bound?
//! bound   := nat | 'H' (('+'|'-') nat)?
//! ```
//!
//! so `0.9{1..H}0{H+1..}` is `H` nines followed by zeros, and
//! `0.9{1..H}(123){H+1..}` continues the nines with `123` repeating.

mod extended;
mod lightstone;
mod repeating;

pub use extended::{
    extended_value, parse_extended, render_extended, ExtendedDecimal, Rank, Segment,
    MAX_FINITE_RANK,
};
pub use lightstone::{render_lightstone, to_extended};
pub use repeating::{repeating_to_rational, RepeatingDecimal};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::germ::Hyperreal;
use crate::rational::Rational;

/// Decimal digit of `x ∈ [0, 1)` at finite rank `k ≥ 1`:
/// `floor(x·10^k) mod 10`, with the germ floor rule at exact boundaries.
pub fn digit_at(x: &Hyperreal, k: u32) -> Result<u8> {
    if k == 0 {
        return Err(Error::OutOfRange);
    }
    if x.signum() < 0 || *x >= Hyperreal::one() {
        return Err(Error::OutOfRange);
    }
    let scale = Rational::integer(10).pow(i64::from(k)).expect("nonzero");
    let shifted = x.mul(&Hyperreal::from_rational(scale))?;
    let floor = shifted.floor_limited()?;
    let digit = floor.mod_floor(&BigInt::from(10));
    Ok(digit.to_u8().expect("digit below 10"))
}
