use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::repeating::{digits_value, primitive_root, RepeatingDecimal};
use crate::error::{Error, Result};
use crate::germ::{Hypernat, Hyperreal, MAX_EXPONENT};
use crate::rational::Rational;

/// Largest finite rank accepted in extended-decimal text.
pub const MAX_FINITE_RANK: u64 = 100_000;

/// A digit position: a finite rank `k ≥ 1` or the hyper rank `H + c`.
/// Every finite rank precedes every hyper rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Finite(u64),
    Hyper(i64),
}

impl Rank {
    fn succ(self) -> Rank {
        match self {
            Rank::Finite(k) => Rank::Finite(k + 1),
            Rank::Hyper(c) => Rank::Hyper(c + 1),
        }
    }

    /// Number of ranks in `[self, end]` when it is finite.
    fn span(self, end: Rank) -> Option<u64> {
        match (self, end) {
            (Rank::Finite(a), Rank::Finite(b)) => Some(b - a + 1),
            (Rank::Hyper(a), Rank::Hyper(b)) => Some((b - a + 1) as u64),
            _ => None,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Rank::Finite(k) => write!(f, "{k}"),
            Rank::Hyper(0) => f.write_str("H"),
            Rank::Hyper(c) if c > 0 => write!(f, "H+{c}"),
            Rank::Hyper(c) => write!(f, "H-{}", c.unsigned_abs()),
        }
    }
}

/// A digit group laid over the ranks `start..=end` (`end = None` for the
/// unbounded tail). The group repeats as many times as the range needs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub group: Vec<u8>,
    pub start: Rank,
    pub end: Option<Rank>,
}

impl Segment {
    /// True when the range runs from a finite rank to a hyper rank.
    pub fn is_hyperfinite(&self) -> bool {
        matches!(
            (self.start, self.end),
            (Rank::Finite(_), Some(Rank::Hyper(_)))
        )
    }

    fn finite_len(&self) -> Option<u64> {
        self.end.and_then(|end| self.start.span(end))
    }

    pub fn contains(&self, rank: Rank) -> bool {
        rank >= self.start && self.end.is_none_or(|end| rank <= end)
    }
}

/// Digits indexed by finite and hyper ranks, always ending in an unbounded
/// repeating tail (an all-zero tail for terminating expansions).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedDecimal {
    negative: bool,
    integer_part: BigUint,
    segments: Vec<Segment>,
}

impl ExtendedDecimal {
    /// Validates and canonicalizes a segment list.
    pub fn new(negative: bool, integer_part: BigUint, segments: Vec<Segment>) -> Result<Self> {
        let segments = if segments.is_empty() {
            alloc::vec![Segment {
                group: alloc::vec![0],
                start: Rank::Finite(1),
                end: None,
            }]
        } else {
            segments
        };
        validate(&segments)?;
        let mut d = ExtendedDecimal {
            negative,
            integer_part,
            segments,
        };
        d.canonicalize();
        Ok(d)
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn integer_part(&self) -> &BigUint {
        &self.integer_part
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    fn canonicalize(&mut self) {
        for seg in &mut self.segments {
            if let Some(len) = seg.finite_len() {
                if len <= seg.group.len() as u64 {
                    seg.group.truncate(len as usize);
                }
            }
            seg.group = primitive_root(&seg.group).to_vec();
        }
        let mut merged: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for seg in core::mem::take(&mut self.segments) {
            if let Some(prev) = merged.last_mut() {
                let continues = prev.group == seg.group
                    && (prev.group.len() == 1
                        || prev
                            .finite_len()
                            .is_some_and(|len| len % prev.group.len() as u64 == 0));
                if continues {
                    prev.end = seg.end;
                    continue;
                }
            }
            merged.push(seg);
        }
        self.segments = merged;
        if self.integer_part.is_zero() && self.segments.len() == 1 && self.segments[0].group == [0]
        {
            self.negative = false;
        }
    }

    /// Digit at a rank, finite or hyper.
    pub fn digit_at(&self, rank: Rank) -> Option<u8> {
        let seg = self.segments.iter().find(|s| s.contains(rank))?;
        let offset = match (seg.start, rank) {
            (Rank::Finite(s), Rank::Finite(r)) => r - s,
            (Rank::Hyper(s), Rank::Hyper(r)) => (r - s) as u64,
            // only single-digit groups span from finite to hyper ranks
            _ => 0,
        };
        Some(seg.group[(offset % seg.group.len() as u64) as usize])
    }

    /// Exact value in the germ fragment: `A + B·10^-H`.
    pub fn value(&self) -> Result<Hyperreal> {
        let mut standard = Rational::integer(BigInt::from(self.integer_part.clone()));
        let mut tiny = Rational::zero();
        let tenth = Rational::new(1, 10);
        let tenth_pow = |k: i64| tenth.pow(k).expect("nonzero");
        for seg in &self.segments {
            let g = &seg.group;
            let l = g.len() as i64;
            let period_value = || {
                digits_value(g) / (Rational::integer(10).pow(l).expect("nonzero") - Rational::one())
            };
            match (seg.start, seg.end) {
                (Rank::Finite(s), Some(Rank::Finite(e))) => {
                    standard = standard + run_value(g, s as i64, e as i64);
                }
                (Rank::Hyper(s), Some(Rank::Hyper(e))) => {
                    tiny = tiny + run_value(g, s, e);
                }
                (Rank::Finite(s), Some(Rank::Hyper(c))) => {
                    let d = Rational::integer(g[0] as i64) / Rational::integer(9);
                    standard = standard + &d * &tenth_pow(s as i64 - 1);
                    tiny = tiny - d * tenth_pow(c);
                }
                (Rank::Finite(s), None) => {
                    standard = standard + period_value() * tenth_pow(s as i64 - 1);
                }
                (Rank::Hyper(c), None) => {
                    tiny = tiny + period_value() * tenth_pow(c - 1);
                }
                (Rank::Hyper(_), Some(Rank::Finite(_))) => unreachable!("rejected by validate"),
            }
        }
        let x = Hyperreal::from_rational(standard).add(
            &Hyperreal::pow_base(&tenth, Hypernat::H)?.mul(&Hyperreal::from_rational(tiny))?,
        )?;
        Ok(if self.negative { x.neg() } else { x })
    }

    /// The extended form of an ordinary repeating decimal.
    pub fn from_repeating(d: &RepeatingDecimal) -> Self {
        let p = d.prefix().len() as u64;
        let mut segments = Vec::new();
        if p > 0 {
            segments.push(Segment {
                group: d.prefix().to_vec(),
                start: Rank::Finite(1),
                end: Some(Rank::Finite(p)),
            });
        }
        segments.push(Segment {
            group: if d.period().is_empty() {
                alloc::vec![0]
            } else {
                d.period().to_vec()
            },
            start: Rank::Finite(p + 1),
            end: None,
        });
        ExtendedDecimal::new(d.is_negative(), d.integer_part().clone(), segments)
            .expect("contiguous finite segments are valid")
    }
}

/// `Σ_{r=s}^{e} g[(r-s) mod L]·10^-r` for a finite run of ranks.
fn run_value(g: &[u8], s: i64, e: i64) -> Rational {
    let len = (e - s + 1) as usize;
    let digits: Vec<u8> = (0..len).map(|i| g[i % g.len()]).collect();
    digits_value(&digits) * Rational::new(1, 10).pow(e).expect("nonzero")
}

fn validate(segments: &[Segment]) -> Result<()> {
    let mut expected = Rank::Finite(1);
    for (i, seg) in segments.iter().enumerate() {
        if seg.group.is_empty() || seg.group.iter().any(|&d| d > 9) {
            return Err(Error::syntax(
                0,
                "digit groups must be nonempty decimal digits",
            ));
        }
        if seg.start != expected {
            return Err(Error::syntax(
                0,
                alloc::format!(
                    "segment {} starts at rank {} but rank {} is next",
                    i + 1,
                    seg.start,
                    expected
                ),
            ));
        }
        for rank in [Some(seg.start), seg.end].into_iter().flatten() {
            match rank {
                Rank::Finite(k) if k > MAX_FINITE_RANK => {
                    return Err(Error::CapExceeded {
                        what: "finite rank",
                        limit: MAX_FINITE_RANK as usize,
                    })
                }
                Rank::Hyper(c) if c.abs() > MAX_EXPONENT => {
                    return Err(Error::CapExceeded {
                        what: "hyper rank offset",
                        limit: MAX_EXPONENT as usize,
                    })
                }
                _ => {}
            }
        }
        match seg.end {
            Some(end) => {
                if end < seg.start {
                    return Err(Error::syntax(
                        0,
                        alloc::format!("empty range {}..{}", seg.start, end),
                    ));
                }
                if i + 1 == segments.len() {
                    return Err(Error::syntax(0, "the last segment must be unbounded"));
                }
                expected = end.succ();
            }
            None if i + 1 != segments.len() => {
                return Err(Error::syntax(0, "only the last segment may be unbounded"));
            }
            None => {}
        }
        if seg.is_hyperfinite() && seg.group.len() > 1 {
            // digits up to rank H would depend on H modulo the group length
            return Err(Error::unsupported(alloc::format!(
                "multi-digit group repeated from rank {} to rank {}",
                seg.start,
                seg.end.expect("hyperfinite segments are bounded")
            )));
        }
    }
    Ok(())
}

fn write_digits(out: &mut String, digits: &[u8]) {
    out.extend(digits.iter().map(|d| char::from(b'0' + d)));
}

/// Text form accepted back by [`parse_extended`].
pub fn render_extended(d: &ExtendedDecimal) -> String {
    let mut out = String::new();
    if d.negative {
        out.push('-');
    }
    let _ = write!(out, "{}.", d.integer_part);
    for seg in &d.segments {
        let used_once = seg.finite_len() == Some(seg.group.len() as u64);
        if seg.group.len() > 1 && !used_once {
            out.push('(');
            write_digits(&mut out, &seg.group);
            out.push(')');
        } else {
            write_digits(&mut out, &seg.group);
        }
        let _ = write!(out, "{{{}..", seg.start);
        if let Some(end) = seg.end {
            let _ = write!(out, "{end}");
        }
        out.push('}');
    }
    out
}

impl fmt::Display for ExtendedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_extended(self))
    }
}

/// Parses Lightstone-style extended decimals such as `0.9{1..H}0{H+1..}`,
/// and the repeating shorthand `0.58(3)`. Both `.` and `,` separate the
/// integer part.
pub fn parse_extended(text: &str) -> Result<ExtendedDecimal> {
    let frac_has_ranges = text.contains('{');
    if !frac_has_ranges {
        let d: RepeatingDecimal = text.trim().parse()?;
        return Ok(ExtendedDecimal::from_repeating(&d));
    }
    let mut p = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let negative = p.peek() == Some(b'-');
    if negative {
        p.pos += 1;
    }
    let int_digits = p.digits();
    if int_digits.is_empty() {
        return Err(Error::syntax(p.pos, "expected integer part"));
    }
    let integer_part = int_digits
        .iter()
        .fold(BigUint::zero(), |acc, &d| acc * 10u8 + d);
    match p.peek() {
        Some(b'.') | Some(b',') => p.pos += 1,
        _ => return Err(Error::syntax(p.pos, "expected '.' or ','")),
    }
    let mut segments = Vec::new();
    let mut positions = Vec::new();
    while p.peek().is_some_and(|c| c != b' ') {
        positions.push(p.pos);
        segments.push(p.segment()?);
    }
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::syntax(p.pos, "unexpected trailing input"));
    }
    if segments.is_empty() {
        return Err(Error::syntax(p.pos, "expected at least one segment"));
    }
    ExtendedDecimal::new(negative, integer_part, segments).map_err(|e| match e {
        // re-anchor structural errors at the offending segment
        Error::SyntaxError { message, .. } => {
            let at = segment_index(&message)
                .and_then(|i| positions.get(i).copied())
                .unwrap_or(positions[positions.len() - 1]);
            Error::SyntaxError {
                position: at,
                message,
            }
        }
        other => other,
    })
}

fn segment_index(message: &str) -> Option<usize> {
    let rest = message.strip_prefix("segment ")?;
    let n: usize = rest.split(' ').next()?.parse().ok()?;
    n.checked_sub(1)
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Vec<u8> {
        let mut out = Vec::new();
        while let Some(c) = self.peek().filter(u8::is_ascii_digit) {
            out.push(c - b'0');
            self.pos += 1;
        }
        out
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::syntax(
                self.pos,
                alloc::format!("expected '{}'", want as char),
            ))
        }
    }

    fn segment(&mut self) -> Result<Segment> {
        let group = if self.peek() == Some(b'(') {
            self.pos += 1;
            let g = self.digits();
            self.expect(b')')?;
            g
        } else {
            self.digits()
        };
        if group.is_empty() {
            return Err(Error::syntax(self.pos, "expected a digit group"));
        }
        self.expect(b'{')?;
        let start = self.bound()?;
        self.expect(b'.')?;
        self.expect(b'.')?;
        let end = if self.peek() == Some(b'}') {
            None
        } else {
            Some(self.bound()?)
        };
        self.expect(b'}')?;
        Ok(Segment { group, start, end })
    }

    fn number(&mut self) -> Result<u64> {
        let at = self.pos;
        let ds = self.digits();
        if ds.is_empty() {
            return Err(Error::syntax(at, "expected a rank"));
        }
        ds.iter().try_fold(0u64, |acc, &d| {
            acc.checked_mul(10)
                .and_then(|x| x.checked_add(d as u64))
                .ok_or_else(|| Error::syntax(at, "rank out of range"))
        })
    }

    fn bound(&mut self) -> Result<Rank> {
        if self.peek() == Some(b'H') {
            self.pos += 1;
            let sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(Rank::Hyper(0)),
            };
            self.pos += 1;
            let at = self.pos;
            let n = self.number()?;
            let n = i64::try_from(n).map_err(|_| Error::syntax(at, "rank offset out of range"))?;
            return Ok(Rank::Hyper(sign * n));
        }
        let at = self.pos;
        let k = self.number()?;
        if k == 0 {
            return Err(Error::syntax(at, "ranks start at 1"));
        }
        Ok(Rank::Finite(k))
    }
}

impl FromStr for ExtendedDecimal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_extended(s)
    }
}

/// Exact germ value of an extended decimal.
pub fn extended_value(d: &ExtendedDecimal) -> Result<Hyperreal> {
    d.value()
}
