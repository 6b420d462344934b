//! Germ quotients: the number type of the hyperreal fragment.
//!
//! A [`Hyperreal`] is a quotient of two [`ExpPoly`]s in the formal infinite
//! unit `H`. It denotes the germ at infinity of `n ↦ num(n) / den(n)`, and
//! every comparison is decided by eventual dominance of the numerator of a
//! difference. Because such comparisons are eventually constant, they agree
//! in every free-ultrafilter ultrapower.

use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::poly::Poly;
use crate::rational::Rational;

/// Largest `|exponent|` accepted by `pow_base` and by constant powers.
pub const MAX_EXPONENT: i64 = 4096;

/// Where a hyperreal sits relative to the standard reals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Zero,
    Infinitesimal,
    NonzeroLimited,
    Infinite,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Self::Zero => "Zero",
            Self::Infinitesimal => "Infinitesimal",
            Self::NonzeroLimited => "NonzeroLimited",
            Self::Infinite => "Infinite",
        }
    }

    pub fn is_limited(self) -> bool {
        self != Self::Infinite
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An integer-affine exponent `a·H + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub a: i64,
    pub c: i64,
}

impl Affine {
    pub const fn new(a: i64, c: i64) -> Self {
        Affine { a, c }
    }

    pub const fn constant(c: i64) -> Self {
        Affine { a: 0, c }
    }

    pub fn to_hyperreal(self) -> Hyperreal {
        Hyperreal::from_exppoly(ExpPoly::term(
            Rational::one(),
            Poly::from_coeffs(alloc::vec![
                Rational::integer(self.c),
                Rational::integer(self.a)
            ]),
        ))
    }

    /// Value after substituting a finite `n` for `H`.
    pub fn at(self, n: i64) -> i64 {
        self.a * n + self.c
    }

    pub fn offset(self, delta: i64) -> Self {
        Affine::new(self.a, self.c + delta)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.c) {
            (0, c) => write!(f, "{c}"),
            (a, c) => {
                match a {
                    1 => f.write_str("H")?,
                    -1 => f.write_str("-H")?,
                    a => write!(f, "{a}*H")?,
                }
                match c.cmp(&0) {
                    Ordering::Greater => write!(f, "+{c}"),
                    Ordering::Less => write!(f, "-{}", c.unsigned_abs()),
                    Ordering::Equal => Ok(()),
                }
            }
        }
    }
}

/// An eventually positive affine hypernatural `a·H + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Hypernat(Affine);

impl Hypernat {
    /// The infinite hypernatural `H`.
    pub const H: Hypernat = Hypernat(Affine::new(1, 0));

    pub fn new(a: i64, c: i64) -> Result<Self> {
        if a >= 1 || (a == 0 && c >= 1) {
            Ok(Hypernat(Affine::new(a, c)))
        } else {
            Err(Error::unsupported(alloc::format!(
                "{} is not an eventually positive hypernatural",
                Affine::new(a, c)
            )))
        }
    }

    pub fn finite(n: i64) -> Result<Self> {
        Self::new(0, n)
    }

    pub fn a(self) -> i64 {
        self.0.a
    }

    pub fn c(self) -> i64 {
        self.0.c
    }

    pub fn is_infinite(self) -> bool {
        self.0.a >= 1
    }

    pub fn affine(self) -> Affine {
        self.0
    }

    /// `self + delta`, provided the result is still eventually positive.
    pub fn offset(self, delta: i64) -> Result<Self> {
        Self::new(self.0.a, self.0.c + delta)
    }

    pub fn to_hyperreal(self) -> Hyperreal {
        self.0.to_hyperreal()
    }
}

impl TryFrom<Affine> for Hypernat {
    type Error = Error;
    fn try_from(value: Affine) -> Result<Self> {
        Hypernat::new(value.a, value.c)
    }
}

impl From<Hypernat> for Affine {
    fn from(value: Hypernat) -> Self {
        value.0
    }
}

impl PartialOrd for Hypernat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hypernat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.a, self.0.c).cmp(&(other.0.a, other.0.c))
    }
}

impl fmt::Display for Hypernat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Quotient of exp-polys with a positive dominant denominator coefficient.
/// Equality and ordering are semantic (cross-multiplication), so two values
/// with different representatives compare equal.
#[derive(Clone, Debug)]
pub struct Hyperreal {
    num: ExpPoly,
    den: ExpPoly,
}

impl Hyperreal {
    pub fn zero() -> Self {
        Hyperreal {
            num: ExpPoly::zero(),
            den: ExpPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The constant germ `q`.
    pub fn from_rational(q: Rational) -> Self {
        Self::from_exppoly(ExpPoly::constant(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::integer(n))
    }

    /// The infinite unit `H`.
    pub fn h() -> Self {
        Hypernat::H.to_hyperreal()
    }

    pub fn from_exppoly(num: ExpPoly) -> Self {
        Hyperreal {
            num,
            den: ExpPoly::one(),
        }
    }

    /// Builds `num / den` and normalizes the representative.
    pub fn from_parts(num: ExpPoly, den: ExpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(normalize(num, den))
    }

    /// `num / den` without normalization. The denominator must be nonzero;
    /// its sign is still fixed up so the order stays correct.
    pub fn from_parts_raw(num: ExpPoly, den: ExpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if den.signum() < 0 {
            Ok(Hyperreal {
                num: num.neg(),
                den: den.neg(),
            })
        } else {
            Ok(Hyperreal { num, den })
        }
    }

    pub fn numerator(&self) -> &ExpPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ExpPoly {
        &self.den
    }

    /// The numerator alone when the denominator is a positive constant
    /// (folded into the coefficients).
    pub fn as_exppoly(&self) -> Option<ExpPoly> {
        let d = self.den.as_constant()?;
        Some(self.num.scale_by(&d.recip()?))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        let e = self.as_exppoly()?;
        e.as_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn checked(self) -> Result<Self> {
        self.num.check_caps()?;
        self.den.check_caps()?;
        Ok(self)
    }

    pub fn add(&self, other: &Hyperreal) -> Result<Hyperreal> {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::from_parts(num, self.den.mul(&other.den))?.checked()
    }

    pub fn sub(&self, other: &Hyperreal) -> Result<Hyperreal> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Hyperreal) -> Result<Hyperreal> {
        Self::from_parts(self.num.mul(&other.num), self.den.mul(&other.den))?.checked()
    }

    pub fn div(&self, other: &Hyperreal) -> Result<Hyperreal> {
        self.mul(&other.recip()?)
    }

    pub fn neg(&self) -> Hyperreal {
        Hyperreal {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Hyperreal> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::from_parts(self.den.clone(), self.num.clone())
    }

    /// Eventual sign of the denoted sequence.
    pub fn signum(&self) -> i8 {
        self.num.signum() * self.den.signum()
    }

    /// Total order by the sign of the difference.
    pub fn compare(&self, other: &Hyperreal) -> Ordering {
        let diff = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        (diff.signum() * self.den.signum() * other.den.signum()).cmp(&0)
    }

    pub fn classify(&self) -> Classification {
        if self.num.is_zero() {
            return Classification::Zero;
        }
        match self.num.cmp_scale(&self.den) {
            Ordering::Less => Classification::Infinitesimal,
            Ordering::Equal => Classification::NonzeroLimited,
            Ordering::Greater => Classification::Infinite,
        }
    }

    /// Standard part: the unique rational infinitely close to a limited germ.
    pub fn st(&self) -> Result<Rational> {
        match self.classify() {
            Classification::Zero | Classification::Infinitesimal => Ok(Rational::zero()),
            Classification::NonzeroLimited => {
                let n = self.num.leading_coefficient().expect("nonzero numerator");
                let d = self.den.leading_coefficient().expect("nonzero denominator");
                Ok(n / d)
            }
            Classification::Infinite => Err(Error::InfiniteArgument),
        }
    }

    /// True iff the two values differ by zero or an infinitesimal.
    pub fn halo_equiv(&self, other: &Hyperreal) -> bool {
        let diff = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        diff.is_zero() || diff.cmp_scale(&den) == Ordering::Less
    }

    /// Exact integer power.
    pub fn pow_int(&self, k: i64) -> Result<Hyperreal> {
        if k < 0 {
            return self.recip()?.pow_int(-k);
        }
        if let Some(q) = self.as_rational() {
            if k > MAX_EXPONENT {
                return Err(Error::CapExceeded {
                    what: "exponent",
                    limit: MAX_EXPONENT as usize,
                });
            }
            return Ok(Self::from_rational(q.pow(k).expect("nonnegative exponent")));
        }
        let mut result = Hyperreal::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `b^e` for a positive rational base and affine exponent `a·H + c`,
    /// stored as the single term `b^c · (b^a)^H`.
    pub fn pow_base(b: &Rational, e: impl Into<Affine>) -> Result<Hyperreal> {
        let e = e.into();
        if !b.is_positive() {
            return Err(Error::NonPositiveBase);
        }
        if e.a.abs() > MAX_EXPONENT || e.c.abs() > MAX_EXPONENT {
            return Err(Error::CapExceeded {
                what: "exponent",
                limit: MAX_EXPONENT as usize,
            });
        }
        let base = b.pow(e.a).expect("positive base");
        let coeff = b.pow(e.c).expect("positive base");
        Ok(Self::from_exppoly(ExpPoly::term(
            base,
            Poly::constant(coeff),
        )))
    }

    /// Eventual value of `floor` on the denoted sequence.
    pub fn floor_limited(&self) -> Result<BigInt> {
        let st = self.st()?;
        if !st.is_integer() {
            return Ok(st.floor());
        }
        let l = st.floor();
        let residual = self.sub(&Self::from_rational(st))?;
        if residual.signum() < 0 {
            Ok(l - 1)
        } else {
            Ok(l)
        }
    }

    /// Value of the denoted sequence at a finite index.
    pub fn eval_at(&self, n: u64) -> Result<Rational> {
        let d = self.den.eval_at(n);
        let inv = d.recip().ok_or(Error::DivisionByZero)?;
        Ok(self.num.eval_at(n) * inv)
    }
}

/// Picks a tidy representative of `num / den` without factoring exp-polys:
/// shift the dominant denominator base to 1, strip common powers of `H`,
/// cancel polynomial gcds against a single-term denominator, and make the
/// leading denominator coefficient 1.
fn normalize(num: ExpPoly, den: ExpPoly) -> Hyperreal {
    if num.is_zero() {
        return Hyperreal::zero();
    }
    let (mut num, mut den) = (num, den);

    let dominant_base = den.dominant().expect("nonzero denominator").0.clone();
    if !dominant_base.is_one() {
        let shift = dominant_base.recip().expect("bases are positive");
        num = num.rebase(&shift);
        den = den.rebase(&shift);
    }

    let common = num.valuation().min(den.valuation()).unwrap_or(0);
    if common > 0 {
        num = num.map_polys(|p| p.shift_down(common));
        den = den.map_polys(|p| p.shift_down(common));
    }

    if den.term_count() == 1 {
        let q = den.dominant().expect("nonzero").1.clone();
        if !q.is_constant() {
            let g = num.terms().fold(q.clone(), |g, (_, p)| g.gcd(p));
            if !g.is_constant() {
                let divide = |p: &Poly| p.div_rem(&g).expect("gcd is nonzero").0;
                num = num.map_polys(divide);
                den = den.map_polys(divide);
            }
        }
    }

    let lead = den
        .leading_coefficient()
        .expect("nonzero denominator")
        .clone();
    if !lead.is_one() {
        let inv = lead.recip().expect("leading coefficient is nonzero");
        num = num.scale_by(&inv);
        den = den.scale_by(&inv);
    }
    Hyperreal { num, den }
}

impl PartialEq for Hyperreal {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for Hyperreal {}

impl PartialOrd for Hyperreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hyperreal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl From<Rational> for Hyperreal {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<Hypernat> for Hyperreal {
    fn from(h: Hypernat) -> Self {
        h.to_hyperreal()
    }
}

impl fmt::Display for Hyperreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(e) = self.as_exppoly() {
            return e.fmt(f);
        }
        if self.num.summand_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let den = alloc::format!("{}", self.den);
        if den.contains(['*', '/', ' ']) {
            write!(f, "/({den})")
        } else {
            write!(f, "/{den}")
        }
    }
}

impl FromStr for Hyperreal {
    type Err = Error;

    /// Parses the germ expression grammar (`H` as the variable).
    fn from_str(s: &str) -> Result<Self> {
        crate::expr::Expr::parse(s, 'H')?.to_germ()
    }
}
