//! Closed-form real sequences, their ultralimits and hyperfinite sums.

use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::germ::{Classification, Hypernat, Hyperreal};
use crate::poly::Poly;
use crate::rational::Rational;

/// A sequence `n ↦ u(n)` written in the germ grammar with `n` for `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqExpr(Expr);

impl SeqExpr {
    pub fn new(expr: Expr) -> Self {
        SeqExpr(expr)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Expr::parse(text, 'n').map(SeqExpr)
    }

    pub fn expr(&self) -> &Expr {
        &self.0
    }

    /// Exact term at index `n`.
    pub fn eval_at(&self, n: u64) -> Result<Rational> {
        self.0.eval_at(n)
    }

    /// The hyperreal obtained by substituting `H` for `n`.
    pub fn ultralimit(&self) -> Result<Hyperreal> {
        self.0.to_germ()
    }

    /// ε–N limit of the sequence, read off as the standard part of the
    /// ultralimit.
    pub fn real_limit(&self) -> Result<Limit> {
        let x = self.ultralimit()?;
        match x.classify() {
            Classification::Infinite => Ok(Limit::Unbounded {
                positive: x.signum() > 0,
            }),
            _ => Ok(Limit::Converges(x.st()?)),
        }
    }
}

impl FromStr for SeqExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SeqExpr::parse(s)
    }
}

impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render('n'))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Converges(Rational),
    /// Tends to `+∞` (`positive`) or `-∞`.
    Unbounded {
        positive: bool,
    },
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Converges(q) => write!(f, "{q}"),
            Limit::Unbounded { positive: true } => f.write_str("Unbounded(+)"),
            Limit::Unbounded { positive: false } => f.write_str("Unbounded(-)"),
        }
    }
}

/// Highest power handled by the closed power-sum formulas.
pub const MAX_POWER_SUM_DEGREE: usize = 3;

/// `Σ_{n=1}^{upper} term(n)` in closed form.
///
/// The term's ultralimit must be an exp-poly whose pieces are `c·rⁿ`
/// (geometric) or `c·nᵈ` with `d ≤ 3` (power sums).
pub fn hyperfinite_sum(term: &SeqExpr, upper: Hypernat) -> Result<Hyperreal> {
    let germ = term.ultralimit()?;
    let pieces = germ
        .as_exppoly()
        .ok_or_else(|| Error::unsupported("summand must be a sum of c*r^n and c*n^d pieces"))?;
    let u = upper.to_hyperreal();
    let mut total = Hyperreal::zero();
    for (base, poly) in pieces.terms() {
        let piece = if base.is_one() {
            power_sums(poly, &u)?
        } else {
            if !poly.is_constant() {
                return Err(Error::unsupported(alloc::format!(
                    "polynomial-times-geometric piece with base {base}"
                )));
            }
            geometric_sum(&poly.coeffs()[0], base, upper)?
        };
        total = total.add(&piece)?;
    }
    Ok(total)
}

/// `c·r·(1 − r^U)/(1 − r)` for `r ≠ 1`.
fn geometric_sum(c: &Rational, r: &Rational, upper: Hypernat) -> Result<Hyperreal> {
    let r_pow = Hyperreal::pow_base(r, upper)?;
    let shortfall = Hyperreal::one().sub(&r_pow)?;
    let factor = c * r / (Rational::one() - r);
    shortfall.mul(&Hyperreal::from_rational(factor))
}

/// Faulhaber closed forms for `Σ n^d`, `d ≤ 3`, composed with `U`.
fn power_sums(poly: &Poly, u: &Hyperreal) -> Result<Hyperreal> {
    let degree = poly.degree().unwrap_or(0);
    if degree > MAX_POWER_SUM_DEGREE {
        return Err(Error::unsupported(alloc::format!(
            "power sum of degree {degree} (maximum {MAX_POWER_SUM_DEGREE})"
        )));
    }
    let one = Hyperreal::one();
    let u1 = u.add(&one)?;
    let s0 = u.clone();
    let s1 = u
        .mul(&u1)?
        .mul(&Hyperreal::from_rational(Rational::new(1, 2)))?;
    let s2 = u
        .mul(&u1)?
        .mul(&u.mul(&Hyperreal::from_int(2))?.add(&one)?)?
        .mul(&Hyperreal::from_rational(Rational::new(1, 6)))?;
    let s3 = s1.mul(&s1)?;
    let sums = [s0, s1, s2, s3];
    let mut total = Hyperreal::zero();
    for (d, c) in poly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        total = total.add(&sums[d].mul(&Hyperreal::from_rational(c.clone()))?)?;
    }
    Ok(total)
}
