//! Worked examples checked against exact evaluation of the denoted
//! sequences at finite indices.

use std::cmp::Ordering;

use hyperline_core::microscope::{MicroscopeView, Position};
use hyperline_core::{Classification, Hypernat, Hyperreal, Rational, SeqExpr};
use num_bigint::BigInt;

fn germ(s: &str) -> Hyperreal {
    s.parse().unwrap()
}

fn at(x: &Hyperreal, n: u64) -> Rational {
    x.eval_at(n).unwrap()
}

#[test]
fn exponential_decay_beats_polynomial_decay() {
    let x = germ("H^5*pow(1/10,H) - 1/H");
    for n in [100, 1_000, 10_000] {
        assert_eq!(at(&x, n).signum(), -1, "n = {n}");
    }
    assert_eq!(x.signum(), -1);
}

#[test]
fn tenth_power_beats_hundredth_power() {
    let (a, b) = (germ("pow(1/10,H)"), germ("pow(1/100,H)"));
    for n in [10, 20, 30] {
        assert!(at(&a, n) > at(&b, n));
    }
    assert_eq!(a.compare(&b), Ordering::Greater);
    assert_eq!(germ("pow(1/10,H)").pow_int(2).unwrap(), b);
}

#[test]
fn two_plus_reciprocal_is_limited() {
    let x = germ("2 + 1/H");
    let gaps: Vec<Rational> = [10u64, 100, 1_000]
        .iter()
        .map(|&n| (at(&x, n) - Rational::integer(2)).abs())
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(x.classify(), Classification::NonzeroLimited);
    assert_eq!(x.st().unwrap(), Rational::integer(2));
}

#[test]
fn successor_ratio_tends_to_one() {
    let x = germ("(H+1)/H");
    for n in [1_000u64, 1_000_000] {
        let gap = at(&x, n) - Rational::one();
        assert_eq!(gap, Rational::new(1, n as i64));
    }
    assert_eq!(x.st().unwrap(), Rational::one());
    let u = SeqExpr::parse("(n+1)/n").unwrap();
    assert_eq!(u.ultralimit().unwrap(), x);
    assert_eq!(u.eval_at(4).unwrap(), Rational::new(5, 4));
}

#[test]
fn halo_membership() {
    let one = Hyperreal::one();
    assert!(one.halo_equiv(&germ("1 + 1/H^2")));
    assert!(one.sub(&germ("1 + 1/H^2")).unwrap().classify() == Classification::Infinitesimal);
    assert!(!one.halo_equiv(&Hyperreal::from_int(2)));
    assert!(germ("1 - pow(1/10,H)").halo_equiv(&one));
}

#[test]
fn lowered_exponent() {
    let lowered =
        Hyperreal::pow_base(&Rational::new(1, 10), Hypernat::new(1, -1).unwrap()).unwrap();
    assert_eq!(lowered, germ("10*pow(1/10,H)"));
    let (a, b) = (
        Hyperreal::one().sub(&lowered).unwrap(),
        germ("1 - pow(1/10,H)"),
    );
    for n in [10, 20] {
        assert!(at(&a, n) < at(&b, n));
    }
    assert!(a < b);
}

#[test]
fn floors_of_limited_values() {
    let x = germ("100000*(1 - pow(1/10,H))");
    for n in [10, 20] {
        assert_eq!(at(&x, n).floor(), BigInt::from(99_999));
    }
    assert_eq!(x.floor_limited().unwrap(), BigInt::from(99_999));

    let y = germ("3 - 1/H");
    for n in [10, 20] {
        assert_eq!(at(&y, n).floor(), BigInt::from(2));
    }
    assert_eq!(y.floor_limited().unwrap(), BigInt::from(2));
    assert_eq!(germ("1/2").floor_limited().unwrap(), BigInt::from(0));
}

#[test]
fn microscope_offsets() {
    let unit = germ("pow(1/10,H)");
    let center = Hyperreal::one();
    let point = germ("1 - 3*pow(1/10,H)");
    let ratio = point.sub(&center).unwrap().div(&unit).unwrap();
    for n in [10, 20] {
        assert_eq!(at(&ratio, n), Rational::integer(-3));
    }
    let deep = germ("1 - pow(1/100,H)");
    let deep_ratio = deep.sub(&center).unwrap().div(&unit).unwrap();
    assert_eq!(deep_ratio.classify(), Classification::Infinitesimal);

    let placed = MicroscopeView::new(center, unit)
        .with_point("a", point)
        .with_point("b", deep)
        .place()
        .unwrap();
    assert_eq!(placed[0].position, Position::InView(Rational::integer(-3)));
    assert_eq!(placed[1].position, Position::InView(Rational::zero()));
}
