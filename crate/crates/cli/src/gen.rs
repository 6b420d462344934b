//! Seeded random germs for the law suites and oracle checks.

use hyperline_core::exppoly::ExpPoly;
use hyperline_core::poly::Poly;
use hyperline_core::{Hyperreal, Rational};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BASES: [(i64, i64); 5] = [(1, 1), (1, 10), (1, 2), (2, 1), (1, 100)];

/// Stream for case `case` of check `check`, independent of how cases are
/// spread over threads.
pub fn case_rng(seed: u64, check: usize, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((check as u64) << 32) | case as u64);
    rng
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.random_range(-9i64..=9), rng.random_range(1i64..=4))
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

fn poly<R: Rng>(rng: &mut R) -> Poly {
    let degree = rng.random_range(0..=1);
    let mut coeffs: Vec<Rational> = (0..degree).map(|_| rational(rng)).collect();
    coeffs.push(nonzero_rational(rng));
    Poly::from_coeffs(coeffs)
}

pub fn exppoly<R: Rng>(rng: &mut R) -> ExpPoly {
    let terms = rng.random_range(1..=2);
    ExpPoly::from_terms((0..terms).map(|_| {
        let (p, q) = BASES[rng.random_range(0..BASES.len())];
        (Rational::new(p, q), poly(rng))
    }))
}

fn nonzero_exppoly<R: Rng>(rng: &mut R) -> ExpPoly {
    loop {
        let e = exppoly(rng);
        if !e.is_zero() {
            return e;
        }
    }
}

/// A constant, an exp-poly, or a quotient of two exp-polys.
pub fn germ<R: Rng>(rng: &mut R) -> Hyperreal {
    match rng.random_range(0..10) {
        0 => Hyperreal::from_rational(rational(rng)),
        1..=4 => Hyperreal::from_exppoly(exppoly(rng)),
        _ => Hyperreal::from_parts(exppoly(rng), nonzero_exppoly(rng))
            .expect("denominator is nonzero"),
    }
}

pub fn nonzero_germ<R: Rng>(rng: &mut R) -> Hyperreal {
    loop {
        let x = germ(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A limited germ: infinite draws are folded back as `q + 1/x`.
pub fn limited_germ<R: Rng>(rng: &mut R) -> Hyperreal {
    let x = germ(rng);
    if x.classify().is_limited() {
        return x;
    }
    let q = Hyperreal::from_rational(rational(rng));
    q.add(&x.recip().expect("infinite germs are nonzero"))
        .expect("small operands stay within caps")
}

/// A second operand that equals, or is infinitely close to, `x` often
/// enough to exercise ties.
pub fn partner<R: Rng>(rng: &mut R, x: &Hyperreal) -> Hyperreal {
    match rng.random_range(0..8) {
        0 => x.clone(),
        1 => {
            let tiny = Hyperreal::pow_base(&Rational::new(1, 10), hyperline_core::Hypernat::H)
                .expect("positive base");
            x.add(
                &tiny
                    .mul(&Hyperreal::from_rational(rational(rng)))
                    .expect("small"),
            )
            .expect("small")
        }
        _ => germ(rng),
    }
}
