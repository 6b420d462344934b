//! Expression trees shared by the germ grammar (variable `H`) and the
//! sequence grammar (variable `n`).
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' int)?
//! atom   := int | VAR | 'pow(' rational ',' affine ')' | '(' expr ')'
//! affine := '-'? int? '*'? VAR (('+'|'-') int)? | '-'? int
//! ```

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::germ::{Affine, Hyperreal, MAX_EXPONENT};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    /// `base^(a·VAR + c)`
    PowBase(Rational, Affine),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn parse(text: &str, var: char) -> Result<Expr> {
        let mut p = Parser::new(text, var);
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }

    /// Parses `sum(term, affine)`, returning the term and the upper bound.
    pub fn parse_sum_call(text: &str, var: char, bound_var: char) -> Result<(Expr, Affine)> {
        let mut p = Parser::new(text, var);
        p.keyword("sum")?;
        p.eat('(')?;
        let term = p.expr()?;
        p.eat(',')?;
        p.var = bound_var;
        let upper = p.affine()?;
        p.eat(')')?;
        p.expect_end()?;
        Ok((term, upper))
    }

    pub fn constant(q: Rational) -> Expr {
        Expr::Const(q)
    }

    pub fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }

    pub fn pow(self, k: i64) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    /// Substitutes `H` for the variable and evaluates in the germ fragment.
    pub fn to_germ(&self) -> Result<Hyperreal> {
        match self {
            Expr::Const(q) => Ok(Hyperreal::from_rational(q.clone())),
            Expr::Var => Ok(Hyperreal::h()),
            Expr::Neg(e) => Ok(e.to_germ()?.neg()),
            Expr::Add(a, b) => a.to_germ()?.add(&b.to_germ()?),
            Expr::Sub(a, b) => a.to_germ()?.sub(&b.to_germ()?),
            Expr::Mul(a, b) => a.to_germ()?.mul(&b.to_germ()?),
            Expr::Div(a, b) => a.to_germ()?.div(&b.to_germ()?),
            Expr::Pow(e, k) => e.to_germ()?.pow_int(*k),
            Expr::PowBase(b, aff) => Hyperreal::pow_base(b, *aff),
        }
    }

    /// Exact value with the variable set to `n`.
    pub fn eval_at(&self, n: u64) -> Result<Rational> {
        match self {
            Expr::Const(q) => Ok(q.clone()),
            Expr::Var => Ok(Rational::integer(n)),
            Expr::Neg(e) => Ok(-e.eval_at(n)?),
            Expr::Add(a, b) => Ok(a.eval_at(n)? + b.eval_at(n)?),
            Expr::Sub(a, b) => Ok(a.eval_at(n)? - b.eval_at(n)?),
            Expr::Mul(a, b) => Ok(a.eval_at(n)? * b.eval_at(n)?),
            Expr::Div(a, b) => {
                let d = b.eval_at(n)?.recip().ok_or(Error::DivisionByZero)?;
                Ok(a.eval_at(n)? * d)
            }
            Expr::Pow(e, k) => {
                if k.abs() > MAX_EXPONENT {
                    return Err(Error::CapExceeded {
                        what: "exponent",
                        limit: MAX_EXPONENT as usize,
                    });
                }
                e.eval_at(n)?.pow(*k).ok_or(Error::DivisionByZero)
            }
            Expr::PowBase(b, aff) => {
                if !b.is_positive() {
                    return Err(Error::NonPositiveBase);
                }
                let n = i64::try_from(n).map_err(|_| Error::CapExceeded {
                    what: "evaluation index",
                    limit: i64::MAX as usize,
                })?;
                let exp = aff
                    .a
                    .checked_mul(n)
                    .and_then(|x| x.checked_add(aff.c))
                    .ok_or(Error::CapExceeded {
                        what: "exponent",
                        limit: i64::MAX as usize,
                    })?;
                b.pow(exp).ok_or(Error::CapExceeded {
                    what: "exponent",
                    limit: u32::MAX as usize,
                })
            }
        }
    }

    /// Renders the tree back into the grammar with the given variable name.
    pub fn render(&self, var: char) -> String {
        let mut out = String::new();
        self.write(&mut out, var, 0);
        out
    }

    fn write(&self, out: &mut String, var: char, parent: u8) {
        use core::fmt::Write;
        let prec = self.precedence();
        let paren = prec < parent;
        if paren {
            out.push('(');
        }
        match self {
            Expr::Const(q) => {
                if q.is_integer() && !q.is_negative() {
                    let _ = write!(out, "{q}");
                } else {
                    let _ = write!(out, "({q})");
                }
            }
            Expr::Var => out.push(var),
            Expr::Neg(e) => {
                out.push('-');
                e.write(out, var, 3);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(out, var, 1);
                out.push_str(if matches!(self, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                });
                b.write(out, var, 2);
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write(out, var, 2);
                out.push(if matches!(self, Expr::Mul(..)) {
                    '*'
                } else {
                    '/'
                });
                b.write(out, var, 3);
            }
            Expr::Pow(e, k) => {
                e.write(out, var, 5);
                let _ = write!(out, "^{k}");
            }
            Expr::PowBase(b, aff) => {
                let _ = write!(out, "pow({b},{})", render_affine(*aff, var));
            }
        }
        if paren {
            out.push(')');
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(_) | Expr::Var | Expr::PowBase(..) => 5,
        }
    }
}

fn render_affine(aff: Affine, var: char) -> String {
    let mut s = alloc::format!("{aff}");
    if var != 'H' {
        s = s.replace('H', &alloc::format!("{var}"));
    }
    s
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('H'))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    var: char,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, var: char) -> Self {
        Parser { src, pos: 0, var }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.rest().chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn err(&self, message: &str) -> Error {
        Error::syntax(self.pos, message)
    }

    fn eat(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(&alloc::format!("expected '{want}', found '{c}'"))),
            None => Err(self.err(&alloc::format!("expected '{want}', found end of input"))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(word) {
            self.pos += word.len();
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected '{word}'")))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(&alloc::format!("unexpected '{c}'"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    lhs = lhs.add(self.term()?);
                }
                Some('-') => {
                    self.bump();
                    lhs = lhs.sub(self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    lhs = lhs.mul(self.unary()?);
                }
                Some('/') => {
                    self.bump();
                    lhs = lhs.div(self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let k = self.signed_int()?;
            let k = i64::try_from(k).map_err(|_| self.err("exponent out of range"))?;
            return Ok(atom.pow(k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                self.eat(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Const(Rational::integer(self.int()?))),
            Some(c) if c == self.var => {
                self.bump();
                Ok(Expr::Var)
            }
            Some('p') if self.rest().starts_with("pow") => {
                self.pos += 3;
                self.eat('(')?;
                let base = self.rational()?;
                self.eat(',')?;
                let exp = self.affine()?;
                self.eat(')')?;
                Ok(Expr::PowBase(base, exp))
            }
            Some(c) => Err(self.err(&alloc::format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected an integer"));
        }
        self.pos += digits;
        BigInt::from_str(&self.src[start..self.pos])
            .map_err(|_| Error::syntax(start, "bad integer"))
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(-self.int()?);
        }
        self.int()
    }

    fn small_int(&mut self) -> Result<i64> {
        let start = self.pos;
        let v = self.int()?;
        i64::try_from(v).map_err(|_| Error::syntax(start, "integer out of range"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.signed_int()?;
        if self.peek() == Some('/') {
            self.bump();
            let at = self.pos;
            let d = self.int()?;
            return Rational::checked_new(n, d)
                .ok_or_else(|| Error::syntax(at, "zero denominator"));
        }
        Ok(Rational::integer(n))
    }

    fn affine(&mut self) -> Result<Affine> {
        let negate = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let sign = if negate { -1 } else { 1 };
        let lead = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.small_int()?),
            _ => None,
        };
        if self.peek() == Some('*') {
            self.bump();
        }
        if self.peek() != Some(self.var) {
            return match lead {
                Some(c) => Ok(Affine::constant(sign * c)),
                None => Err(self.err(&alloc::format!("expected '{}' or an integer", self.var))),
            };
        }
        self.bump();
        let a = sign * lead.unwrap_or(1);
        let c = match self.peek() {
            Some('+') => {
                self.bump();
                self.small_int()?
            }
            Some('-') => {
                self.bump();
                -self.small_int()?
            }
            _ => 0,
        };
        Ok(Affine::new(a, c))
    }
}
