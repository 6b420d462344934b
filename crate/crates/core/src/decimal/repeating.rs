use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `±int.prefix(period)` with a possibly empty period.
///
/// Canonical form: minimal period, minimal prefix, and no all-zero period.
/// `0.(9)` stays distinct from `1` as a string; the two only agree in value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepeatingDecimal {
    negative: bool,
    integer_part: BigUint,
    prefix: Vec<u8>,
    period: Vec<u8>,
}

impl RepeatingDecimal {
    pub fn new(negative: bool, integer_part: BigUint, prefix: Vec<u8>, period: Vec<u8>) -> Self {
        assert!(
            prefix.iter().chain(&period).all(|&d| d < 10),
            "decimal digits must be below 10"
        );
        let mut d = RepeatingDecimal {
            negative,
            integer_part,
            prefix,
            period,
        };
        d.canonicalize();
        d
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn integer_part(&self) -> &BigUint {
        &self.integer_part
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn is_terminating(&self) -> bool {
        self.period.is_empty()
    }

    fn canonicalize(&mut self) {
        if self.period.iter().all(|&d| d == 0) {
            self.period.clear();
        }
        if self.period.is_empty() {
            while self.prefix.last() == Some(&0) {
                self.prefix.pop();
            }
        } else {
            self.period = primitive_root(&self.period).to_vec();
            while let (Some(&p), Some(&q)) = (self.prefix.last(), self.period.last()) {
                if p != q {
                    break;
                }
                self.prefix.pop();
                self.period.rotate_right(1);
            }
        }
        if self.integer_part.is_zero() && self.prefix.is_empty() && self.period.is_empty() {
            self.negative = false;
        }
    }

    /// Exact value: the limit of the truncations.
    pub fn to_rational(&self) -> Rational {
        let int = Rational::integer(BigInt::from(self.integer_part.clone()));
        let p = self.prefix.len() as i64;
        let scale = Rational::new(1, 10).pow(p).expect("nonzero");
        let mut value = int + digits_value(&self.prefix) * &scale;
        if !self.period.is_empty() {
            let l = self.period.len() as i64;
            let denom = Rational::integer(10).pow(l).expect("nonzero") - Rational::one();
            value = value + digits_value(&self.period) / denom * scale;
        }
        if self.negative {
            -value
        } else {
            value
        }
    }

    /// The standard (non-nines-tail) expansion of `q` by long division.
    pub fn from_rational(q: &Rational) -> Self {
        let negative = q.is_negative();
        let q = q.abs();
        let denom = q.denom_unsigned();
        let numer = q.numer().magnitude().clone();
        let (int, mut rem) = numer.div_rem(&denom);
        let mut digits = Vec::new();
        let mut seen: BTreeMap<BigUint, usize> = BTreeMap::new();
        let ten = BigUint::from(10u8);
        while !rem.is_zero() {
            if let Some(&at) = seen.get(&rem) {
                let period = digits.split_off(at);
                return RepeatingDecimal::new(negative, int, digits, period);
            }
            seen.insert(rem.clone(), digits.len());
            let (d, r) = (&rem * &ten).div_rem(&denom);
            digits.push(d.to_u8().expect("digit below 10"));
            rem = r;
        }
        RepeatingDecimal::new(negative, int, digits, Vec::new())
    }

    /// Equal-valued expansion ending in nines, for terminating nonzero values.
    pub fn nines_form(&self) -> Option<RepeatingDecimal> {
        if !self.period.is_empty() {
            return None;
        }
        let mut out = self.clone();
        match out.prefix.last_mut() {
            Some(d) => *d -= 1,
            None if out.integer_part.is_zero() => return None,
            None => out.integer_part -= 1u8,
        }
        out.period = alloc::vec![9];
        Some(out)
    }
}

/// Shortest word whose repetition gives `group`.
pub(crate) fn primitive_root(group: &[u8]) -> &[u8] {
    let n = group.len();
    (1..=n)
        .find(|&k| n.is_multiple_of(k) && group.chunks(k).all(|c| c == &group[..k]))
        .map_or(group, |k| &group[..k])
}

/// Digits read as a base-10 integer.
pub(crate) fn digits_value(digits: &[u8]) -> Rational {
    let n = digits
        .iter()
        .fold(BigUint::zero(), |acc, &d| acc * 10u8 + d);
    Rational::integer(BigInt::from(n))
}

impl fmt::Display for RepeatingDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        write!(f, "{}", self.integer_part)?;
        if self.prefix.is_empty() && self.period.is_empty() {
            return Ok(());
        }
        f.write_str(".")?;
        let digits = |ds: &[u8]| ds.iter().map(|d| char::from(b'0' + d)).collect::<String>();
        f.write_str(&digits(&self.prefix))?;
        if !self.period.is_empty() {
            write!(f, "({})", digits(&self.period))?;
        }
        Ok(())
    }
}

impl FromStr for RepeatingDecimal {
    type Err = Error;

    /// `[-]int[(.|,)digits[(digits)]]`, e.g. `0.(9)`, `0.58(3)`, `-2,5`.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let negative = bytes.first() == Some(&b'-');
        if negative {
            pos += 1;
        }
        let int_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == int_start {
            return Err(Error::syntax(pos, "expected integer part"));
        }
        let integer_part = BigUint::from_str(&s[int_start..pos]).expect("digits only");
        let mut prefix = Vec::new();
        let mut period = Vec::new();
        if pos < bytes.len() {
            if bytes[pos] != b'.' && bytes[pos] != b',' {
                return Err(Error::syntax(pos, "expected '.' or ','"));
            }
            pos += 1;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                prefix.push(bytes[pos] - b'0');
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'(' {
                pos += 1;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    period.push(bytes[pos] - b'0');
                    pos += 1;
                }
                if period.is_empty() {
                    return Err(Error::syntax(pos, "empty repeating group"));
                }
                if bytes.get(pos) != Some(&b')') {
                    return Err(Error::syntax(pos, "expected ')'"));
                }
                pos += 1;
            } else if prefix.is_empty() {
                return Err(Error::syntax(pos, "expected digits after separator"));
            }
            if pos != bytes.len() {
                return Err(Error::syntax(pos, "unexpected trailing input"));
            }
        }
        Ok(RepeatingDecimal::new(
            negative,
            integer_part,
            prefix,
            period,
        ))
    }
}

/// Exact value of a repeating decimal.
pub fn repeating_to_rational(d: &RepeatingDecimal) -> Rational {
    d.to_rational()
}
