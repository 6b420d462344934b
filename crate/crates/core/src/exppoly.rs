//! Exponential-polynomials `Σ_b p_b(H)·b^H` over positive rational bases.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// Largest term count a public result may carry.
pub const MAX_TERMS: usize = 64;
/// Largest polynomial degree a public result may carry.
pub const MAX_DEGREE: usize = 64;

/// Map from base to its (nonzero) polynomial coefficient. Bases absent from
/// the map contribute nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    terms: BTreeMap<Rational, Poly>,
}

/// Growth scale of a nonzero exp-poly: the dominant base, then the degree of
/// its polynomial. Lexicographic order on scales is eventual dominance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scale {
    pub base: Rational,
    pub degree: usize,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Rational::one(), Poly::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `poly(H) · base^H`. The base must be positive.
    pub fn term(base: Rational, poly: Poly) -> Self {
        debug_assert!(base.is_positive());
        let mut terms = BTreeMap::new();
        if !poly.is_zero() {
            terms.insert(base, poly);
        }
        ExpPoly { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Rational, Poly)>) -> Self {
        let mut out = ExpPoly::zero();
        for (base, poly) in pairs {
            out.accumulate(base, poly);
        }
        out
    }

    fn accumulate(&mut self, base: Rational, poly: Poly) {
        if poly.is_zero() {
            return;
        }
        match self.terms.get_mut(&base) {
            Some(existing) => {
                let sum = existing.add(&poly);
                if sum.is_zero() {
                    self.terms.remove(&base);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(base, poly);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing base order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Rational, &Poly)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn poly_for(&self, base: &Rational) -> Option<&Poly> {
        self.terms.get(base)
    }

    pub fn max_degree(&self) -> usize {
        self.terms
            .values()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    /// The dominant term: largest base, with its polynomial.
    pub fn dominant(&self) -> Option<(&Rational, &Poly)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self) -> Option<Scale> {
        self.dominant().map(|(base, poly)| Scale {
            base: base.clone(),
            degree: poly.degree().expect("stored polynomials are nonzero"),
        })
    }

    /// Coefficient that decides the eventual behaviour.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.dominant().and_then(|(_, poly)| poly.leading())
    }

    /// Eventual sign of the denoted sequence.
    pub fn signum(&self) -> i8 {
        self.leading_coefficient().map_or(0, Rational::signum)
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (base, poly) in &other.terms {
            out.accumulate(base.clone(), poly.clone());
        }
        out
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(b, p)| (b.clone(), p.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (b1, p1) in &self.terms {
            for (b2, p2) in &other.terms {
                out.accumulate(b1 * b2, p1.mul(p2));
            }
        }
        out
    }

    pub fn scale_by(&self, c: &Rational) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(b, p)| (b.clone(), p.scale(c)))
                .collect(),
        }
    }

    /// Multiplies every base by `factor`, i.e. multiplies by `factor^H`.
    pub fn rebase(&self, factor: &Rational) -> ExpPoly {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(b, p)| (b * factor, p.clone()))
                .collect(),
        }
    }

    pub(crate) fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> ExpPoly {
        ExpPoly::from_terms(self.terms.iter().map(|(b, p)| (b.clone(), f(p))))
    }

    /// Lowest power of `H` dividing every polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(Poly::valuation).min()
    }

    /// Enforces the term-count and degree caps.
    pub fn check_caps(&self) -> Result<()> {
        if self.terms.len() > MAX_TERMS {
            return Err(Error::CapExceeded {
                what: "term count",
                limit: MAX_TERMS,
            });
        }
        if self.max_degree() > MAX_DEGREE {
            return Err(Error::CapExceeded {
                what: "polynomial degree",
                limit: MAX_DEGREE,
            });
        }
        Ok(())
    }

    /// Value of the denoted sequence at a finite index.
    pub fn eval_at(&self, n: u64) -> Rational {
        let at = Rational::integer(n);
        let exp = i64::try_from(n).expect("evaluation index fits in i64");
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (base, poly)| {
                let power = base.pow(exp).expect("bases are positive");
                acc + poly.eval(&at) * power
            })
    }

    /// Constant value when the exp-poly is a bare rational.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (base, poly) = self.dominant()?;
                (base.is_one() && poly.is_constant()).then(|| poly.coeffs()[0].clone())
            }
            _ => None,
        }
    }

    /// Compares scales of two nonzero exp-polys; zero sorts below everything.
    pub fn cmp_scale(&self, other: &ExpPoly) -> Ordering {
        self.scale().cmp(&other.scale())
    }
}

/// One printed summand `coefficient * H^k * pow(b,H)`, without its sign.
fn write_term(out: &mut String, magnitude: &Rational, degree: usize, base: &Rational) {
    let mut factors: alloc::vec::Vec<String> = alloc::vec::Vec::new();
    match degree {
        0 => {}
        1 => factors.push("H".into()),
        k => factors.push(alloc::format!("H^{k}")),
    }
    if !base.is_one() {
        factors.push(alloc::format!("pow({base},H)"));
    }
    if factors.is_empty() || !magnitude.is_one() {
        factors.insert(0, alloc::format!("{magnitude}"));
    }
    out.push_str(&factors.join("*"));
}

impl fmt::Display for ExpPoly {
    /// Bases in decreasing order, degrees decreasing within a base; the
    /// output is accepted back by the germ expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (base, poly) in self.terms.iter().rev() {
            for (degree, c) in poly.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                if out.is_empty() {
                    if c.is_negative() {
                        out.push('-');
                    }
                } else {
                    out.push_str(if c.is_negative() { " - " } else { " + " });
                }
                write_term(&mut out, &c.abs(), degree, base);
            }
        }
        f.write_str(&out)
    }
}

impl ExpPoly {
    /// Number of printed summands.
    pub fn summand_count(&self) -> usize {
        self.terms
            .values()
            .map(|p| p.coeffs().iter().filter(|c| !c.is_zero()).count())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn tenth_pow() -> ExpPoly {
        ExpPoly::term(Rational::new(1, 10), Poly::constant(Rational::one()))
    }

    #[test]
    fn dominance_prefers_larger_base() {
        // H^5 * (1/10)^H - H: base 1 dominates
        let x = ExpPoly::term(Rational::new(1, 10), Poly::monomial(Rational::one(), 5)).sub(
            &ExpPoly::term(Rational::one(), Poly::monomial(Rational::one(), 1)),
        );
        assert_eq!(x.signum(), -1);
        assert_eq!(
            x.scale(),
            Some(Scale {
                base: Rational::one(),
                degree: 1
            })
        );
    }

    #[test]
    fn cancellation_strips_terms() {
        let x = ExpPoly::one().sub(&tenth_pow());
        let back = x.add(&tenth_pow());
        assert_eq!(back, ExpPoly::one());
        assert!(tenth_pow().sub(&tenth_pow()).is_zero());
    }

    #[test]
    fn product_multiplies_bases() {
        let sq = tenth_pow().mul(&tenth_pow());
        assert_eq!(
            sq,
            ExpPoly::term(Rational::new(1, 100), Poly::constant(Rational::one()))
        );
    }

    #[test]
    fn display_orders_terms() {
        let x = ExpPoly::one().sub(&tenth_pow());
        assert_eq!(x.to_string(), "1 - pow(1/10,H)");
        let y = ExpPoly::term(
            Rational::one(),
            Poly::from_coeffs(alloc::vec![
                Rational::zero(),
                Rational::new(1, 2),
                Rational::new(1, 2)
            ]),
        );
        assert_eq!(y.to_string(), "1/2*H^2 + 1/2*H");
        assert_eq!(
            tenth_pow().scale_by(&Rational::integer(-10)).to_string(),
            "-10*pow(1/10,H)"
        );
    }

    #[test]
    fn eval_matches_hand_computation() {
        let x = ExpPoly::one().sub(&tenth_pow());
        assert_eq!(x.eval_at(3), Rational::new(999, 1000));
    }

    #[test]
    fn caps() {
        let big = ExpPoly::term(
            Rational::one(),
            Poly::monomial(Rational::one(), MAX_DEGREE + 1),
        );
        assert!(matches!(big.check_caps(), Err(Error::CapExceeded { .. })));
    }
}
