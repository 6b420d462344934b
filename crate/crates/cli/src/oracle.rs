//! Numeric oracles: exact evaluation of the sequences that germs denote.

use std::cmp::Ordering;

use hyperline_core::expr::Expr;
use hyperline_core::{Affine, Hypernat, Hyperreal, Rational, Result, SeqExpr};
use rand::Rng;

/// First evaluation point of [`eventual_order`].
pub const FIRST_POINT: u64 = 100;
/// Evaluation points stop growing here.
pub const LAST_POINT: u64 = 10_000_000;

/// Order of the sequences denoted by `x` and `y`, read off once it agrees
/// at three successive points `n, 10n, 100n` starting at `n = 100`.
/// `None` if it has not settled by [`LAST_POINT`].
pub fn eventual_order(x: &Hyperreal, y: &Hyperreal) -> Option<Ordering> {
    let order_at = |n: u64| -> Option<Ordering> {
        let (a, b) = (x.eval_at(n).ok()?, y.eval_at(n).ok()?);
        Some(a.cmp(&b))
    };
    let mut n = FIRST_POINT;
    let mut window = [order_at(n), order_at(n * 10), order_at(n * 100)];
    loop {
        if let [Some(a), Some(b), Some(c)] = window {
            if a == b && b == c {
                return Some(a);
            }
        }
        n *= 10;
        if n * 100 > LAST_POINT {
            return None;
        }
        window = [window[1], window[2], order_at(n * 100)];
    }
}

/// `Σ_{n=1}^{top} term(n)` term by term.
pub fn direct_sum(term: &SeqExpr, top: i64) -> Result<Rational> {
    let mut total = Rational::zero();
    for n in 1..=top {
        total = total + term.eval_at(n as u64)?;
    }
    Ok(total)
}

const SUM_BASES: [(i64, i64); 4] = [(1, 10), (1, 2), (2, 3), (3, 2)];

/// A summand made of one to three `c·rⁿ` and `c·nᵈ` pieces.
pub fn summable_term<R: Rng>(rng: &mut R) -> SeqExpr {
    let pieces = rng.random_range(1..=3);
    let expr = (0..pieces)
        .map(|_| {
            let c = Expr::Const(Rational::new(
                rng.random_range(-9i64..=9),
                rng.random_range(1i64..=3),
            ));
            if rng.random_bool(0.5) {
                let (p, q) = SUM_BASES[rng.random_range(0..SUM_BASES.len())];
                c.mul(Expr::PowBase(Rational::new(p, q), Affine::new(1, 0)))
            } else {
                c.mul(Expr::Var.pow(rng.random_range(0..=3)))
            }
        })
        .reduce(Expr::add)
        .expect("at least one piece");
    SeqExpr::new(expr)
}

/// `a·H + c` with `a ∈ {1, 2}` and `c ∈ [-2, 3]`.
pub fn upper_bound<R: Rng>(rng: &mut R) -> Hypernat {
    Hypernat::new(rng.random_range(1..=2), rng.random_range(-2..=3)).expect("a >= 1")
}
