#![allow(dead_code)]

use hyperline_core::exppoly::ExpPoly;
use hyperline_core::poly::Poly;
use hyperline_core::{Hyperreal, Rational};
use proptest::prelude::*;

pub const BASES: [(i64, i64); 5] = [(1, 1), (1, 10), (1, 2), (2, 1), (1, 100)];

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

pub fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 1..=3).prop_map(Poly::from_coeffs)
}

pub fn exppoly() -> impl Strategy<Value = ExpPoly> {
    prop::collection::vec((0..BASES.len(), poly()), 1..=3).prop_map(|pairs| {
        ExpPoly::from_terms(
            pairs
                .into_iter()
                .map(|(i, p)| (Rational::new(BASES[i].0, BASES[i].1), p)),
        )
    })
}

fn nonzero_exppoly() -> impl Strategy<Value = ExpPoly> {
    exppoly().prop_filter("nonzero", |e| !e.is_zero())
}

/// Germs with a constant denominator about half the time.
pub fn germ() -> impl Strategy<Value = Hyperreal> {
    prop_oneof![
        exppoly().prop_map(Hyperreal::from_exppoly),
        (exppoly(), nonzero_exppoly())
            .prop_map(|(n, d)| Hyperreal::from_parts(n, d).expect("nonzero denominator")),
    ]
}

pub fn limited_germ() -> impl Strategy<Value = Hyperreal> {
    germ().prop_filter("limited", |x| x.classify().is_limited())
}

pub fn nonzero_germ() -> impl Strategy<Value = Hyperreal> {
    germ().prop_filter("nonzero", |x| !x.is_zero())
}

/// Sign of the denoted sequence once it agrees at three successive points
/// `n, 10n, 100n`, starting at `n = 100`.
pub fn stabilized_sign(x: &Hyperreal) -> i8 {
    let mut n = 100u64;
    loop {
        let signs: Vec<i8> = [n, n * 10, n * 100]
            .iter()
            .map(|&k| x.eval_at(k).map(|v| v.signum()).unwrap_or(2))
            .collect();
        if signs.iter().all(|&s| s == signs[0] && s != 2) {
            return signs[0];
        }
        n *= 10;
        assert!(n <= 10_000, "sign of {x} did not stabilize");
    }
}
