use alloc::string::String;
use alloc::vec::Vec;

use super::extended::{render_extended, ExtendedDecimal, Rank, Segment};
use super::repeating::RepeatingDecimal;
use crate::error::{Error, Result};
use crate::germ::{Hyperreal, MAX_EXPONENT};
use crate::rational::Rational;

/// Renders `x = q + s·10^-H` as an extended decimal string.
///
/// The digits of `q` run up to a hyper rank `H + c` and the tail after it
/// spells out `t = s·10^c + d/9`, where `d` is the digit that repeats in
/// `q`'s expansion. `c` is the largest offset with `0 ≤ t < 1`, so the run
/// of `d` is as long as possible. Anything else is `UnsupportedForm`.
pub fn render_lightstone(x: &Hyperreal) -> Result<String> {
    to_extended(x).map(|d| render_extended(&d))
}

/// The extended decimal that [`render_lightstone`] prints.
pub fn to_extended(x: &Hyperreal) -> Result<ExtendedDecimal> {
    let (q, s) = split_single_scale(x)?;
    if s.is_zero() {
        return Ok(ExtendedDecimal::from_repeating(
            &RepeatingDecimal::from_rational(&q),
        ));
    }
    let negative = x.signum() < 0;
    let (q, s) = if negative { (-q, -s) } else { (q, s) };

    let standard = RepeatingDecimal::from_rational(&q);
    let candidates = core::iter::once(standard.clone()).chain(standard.nines_form());
    for expansion in candidates {
        let d = match expansion.period() {
            [] => 0,
            [d] => *d,
            _ => continue,
        };
        if let Some(c) = largest_offset(&s, d) {
            return build(negative, &expansion, d, c, &s);
        }
    }
    Err(Error::unsupported(alloc::format!(
        "{x} has no extended decimal with a single hyper boundary"
    )))
}

/// Splits `x` into its base-1 and base-1/10 constants.
fn split_single_scale(x: &Hyperreal) -> Result<(Rational, Rational)> {
    let e = x
        .as_exppoly()
        .ok_or_else(|| Error::unsupported("value is not an exponential-polynomial"))?;
    let tenth = Rational::new(1, 10);
    let mut q = Rational::zero();
    let mut s = Rational::zero();
    for (base, poly) in e.terms() {
        if !poly.is_constant() {
            return Err(Error::unsupported(
                "polynomial growth in H has no decimal expansion",
            ));
        }
        let c = poly.coeffs()[0].clone();
        if base.is_one() {
            q = c;
        } else if *base == tenth {
            s = c;
        } else {
            return Err(Error::unsupported(alloc::format!(
                "exponential scale pow({base},H) is not a single decimal scale"
            )));
        }
    }
    Ok((q, s))
}

fn tail_value(s: &Rational, d: u8, c: i64) -> Rational {
    s * &Rational::integer(10).pow(c).expect("nonzero") + Rational::new(d as i64, 9)
}

fn tail_ok(t: &Rational) -> bool {
    !t.is_negative() && *t < Rational::one()
}

/// Largest `c` with `0 ≤ s·10^c + d/9 < 1`. For `s ≠ 0` the valid offsets
/// form a down-set: lowering `c` moves `t` toward `d/9`, which lies in
/// `[0, 1]`, and only `d = 9, s > 0` or `d = 0, s < 0` miss it entirely.
fn largest_offset(s: &Rational, d: u8) -> Option<i64> {
    if (s.is_positive() && d == 9) || (s.is_negative() && d == 0) {
        return None;
    }
    let mut c = 0i64;
    if tail_ok(&tail_value(s, d, c)) {
        while c < MAX_EXPONENT && tail_ok(&tail_value(s, d, c + 1)) {
            c += 1;
        }
        return Some(c);
    }
    while c > -MAX_EXPONENT {
        c -= 1;
        if tail_ok(&tail_value(s, d, c)) {
            return Some(c);
        }
    }
    None
}

fn build(
    negative: bool,
    expansion: &RepeatingDecimal,
    d: u8,
    c: i64,
    s: &Rational,
) -> Result<ExtendedDecimal> {
    let p = expansion.prefix().len() as u64;
    let mut segments = Vec::new();
    if p > 0 {
        segments.push(Segment {
            group: expansion.prefix().to_vec(),
            start: Rank::Finite(1),
            end: Some(Rank::Finite(p)),
        });
    }
    segments.push(Segment {
        group: alloc::vec![d],
        start: Rank::Finite(p + 1),
        end: Some(Rank::Hyper(c)),
    });
    let tail = RepeatingDecimal::from_rational(&tail_value(s, d, c));
    let m = tail.prefix().len() as i64;
    if m > 0 {
        segments.push(Segment {
            group: tail.prefix().to_vec(),
            start: Rank::Hyper(c + 1),
            end: Some(Rank::Hyper(c + m)),
        });
    }
    segments.push(Segment {
        group: if tail.period().is_empty() {
            alloc::vec![0]
        } else {
            tail.period().to_vec()
        },
        start: Rank::Hyper(c + m + 1),
        end: None,
    });
    ExtendedDecimal::new(negative, expansion.integer_part().clone(), segments)
}
